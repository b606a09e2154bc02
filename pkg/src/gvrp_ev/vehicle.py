"""Parametric electric-vehicle description: motor map, battery, body."""

import json
from dataclasses import dataclass, field

import numpy as np

GRAVITY = 9.81          # m/s^2
AIR_DENSITY = 1.2041    # kg/m^3 at 20 C


@dataclass(frozen=True)
class MotorEfficiencyMap:
    """Bilinear efficiency lookup over (vehicle speed, wheel torque).

    Queries outside the grid clamp to the boundary. Efficiencies are stored
    the conventional way round, mechanical output over electrical input, so
    values live in (0, 1].
    """

    speeds_kmh: tuple
    torques_nm: tuple
    efficiency: tuple  # row per speed, column per torque

    def __post_init__(self):
        grid = np.asarray(self.efficiency, dtype=float)
        if grid.shape != (len(self.speeds_kmh), len(self.torques_nm)):
            raise ValueError("efficiency grid shape does not match axes")
        if np.any(grid <= 0) or np.any(grid > 1):
            raise ValueError("motor efficiencies must lie in (0, 1]")

    def __call__(self, speed_kmh: float, torque_nm: float) -> float:
        s = np.asarray(self.speeds_kmh)
        t = np.asarray(self.torques_nm)
        g = np.asarray(self.efficiency)
        x = min(max(speed_kmh, s[0]), s[-1])
        y = min(max(abs(torque_nm), t[0]), t[-1])
        i = min(int(np.searchsorted(s, x, side="right")) - 1, len(s) - 2)
        j = min(int(np.searchsorted(t, y, side="right")) - 1, len(t) - 2)
        fx = (x - s[i]) / (s[i + 1] - s[i])
        fy = (y - t[j]) / (t[j + 1] - t[j])
        top = g[i, j] * (1 - fy) + g[i, j + 1] * fy
        bot = g[i + 1, j] * (1 - fy) + g[i + 1, j + 1] * fy
        return float(top * (1 - fx) + bot * fx)


def default_motor_map(peak: float = 0.93) -> MotorEfficiencyMap:
    """Flat-ish map: near peak over most of the envelope, softer at low load."""
    speeds = (0.0, 10.0, 30.0, 60.0, 90.0, 130.0)
    torques = (0.0, 50.0, 150.0, 400.0, 800.0, 1500.0)
    rows = []
    for s in speeds:
        row = []
        speed_f = min(1.0, 0.25 + s / 40.0)
        for t in torques:
            torque_f = min(1.0, 0.55 + t / 330.0)
            row.append(round(peak * min(1.0, 0.78 + 0.22 * speed_f * torque_f), 4))
        rows.append(tuple(row))
    return MotorEfficiencyMap(speeds_kmh=speeds, torques_nm=torques, efficiency=tuple(rows))


@dataclass(frozen=True)
class BatteryModel:
    """Pack model: open-circuit voltage as a piecewise-linear function of
    state of charge, plus a lumped internal resistance."""

    soc_grid: tuple
    voltage_v: tuple  # pack open-circuit voltage at each SOC grid point
    internal_resistance_ohm: float
    capacity_kwh: float

    def __post_init__(self):
        if self.internal_resistance_ohm < 0:
            raise ValueError("internal resistance must be >= 0")
        v = np.asarray(self.voltage_v)
        if np.any(np.diff(v) <= 0):
            raise ValueError("open-circuit voltage must increase with SOC")

    def open_circuit_voltage(self, soc: float) -> float:
        return float(np.interp(soc, self.soc_grid, self.voltage_v))

    def chemical_power(self, terminal_power_w: float, soc: float) -> float:
        """Power drawn from the cells to deliver terminal_power_w at the pack
        terminals, including the I^2 R loss. Raises if the pack cannot source
        the requested power at this SOC."""
        if terminal_power_w <= 0:
            return 0.0
        voc = self.open_circuit_voltage(soc)
        r = self.internal_resistance_ohm
        if r == 0:
            return terminal_power_w
        disc = voc * voc - 4.0 * r * terminal_power_w
        if disc < 0:
            raise PowerLimitError(
                f"battery cannot deliver {terminal_power_w / 1e3:.1f} kW at SOC {soc:.2f}")
        current = (voc - disc ** 0.5) / (2.0 * r)
        return voc * current


class PowerLimitError(RuntimeError):
    """The demanded traction power exceeds what the powertrain can source."""


def default_battery(capacity_kwh: float = 50.228) -> BatteryModel:
    # Pack curve loosely shaped like an NMC pack: sag toward empty, flat middle.
    return BatteryModel(
        soc_grid=(0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0),
        voltage_v=(300.0, 330.0, 352.0, 360.0, 368.0, 385.0, 398.0),
        internal_resistance_ohm=0.08,
        capacity_kwh=capacity_kwh,
    )


@dataclass(frozen=True)
class VehicleSpec:
    """Physical parameters of the delivery vehicle and its battery budget.

    reserve_fraction is the share of battery capacity that must remain
    untouched at all times; wheel_radius maps traction force to motor torque
    for efficiency lookups.
    """

    curb_mass: float = 2115.0          # kg
    payload_capacity: float = 1000.0   # kg
    frontal_area: float = 2.5          # m^2
    drag_coefficient: float = 0.32
    rolling_resistance: float = 0.012
    drivetrain_efficiency: float = 0.95
    auxiliary_power: float = 0.3       # kW
    wheel_radius: float = 0.32         # m
    battery_capacity: float = 50.228   # kWh
    reserve_fraction: float = 0.10
    battery: BatteryModel = field(default_factory=default_battery)
    motor: MotorEfficiencyMap = field(default_factory=default_motor_map)

    def __post_init__(self):
        positive = {
            "curb_mass": self.curb_mass,
            "payload_capacity": self.payload_capacity,
            "frontal_area": self.frontal_area,
            "drag_coefficient": self.drag_coefficient,
            "rolling_resistance": self.rolling_resistance,
            "auxiliary_power": self.auxiliary_power,
            "wheel_radius": self.wheel_radius,
            "battery_capacity": self.battery_capacity,
        }
        for name, value in positive.items():
            if value < 0 or (value == 0 and name not in ("auxiliary_power",)):
                raise ValueError(f"{name} must be positive, got {value}")
        if not 0 < self.drivetrain_efficiency <= 1:
            raise ValueError("drivetrain_efficiency must be in (0, 1]")
        if not 0 <= self.reserve_fraction < 1:
            raise ValueError("reserve_fraction must be in [0, 1)")

    @property
    def usable_energy_kwh(self) -> float:
        """Energy available above the mandatory reserve."""
        return self.battery_capacity * (1.0 - self.reserve_fraction)

    def to_json(self) -> str:
        doc = {
            "curb_mass": self.curb_mass,
            "payload_capacity": self.payload_capacity,
            "frontal_area": self.frontal_area,
            "drag_coefficient": self.drag_coefficient,
            "rolling_resistance": self.rolling_resistance,
            "drivetrain_efficiency": self.drivetrain_efficiency,
            "auxiliary_power": self.auxiliary_power,
            "wheel_radius": self.wheel_radius,
            "battery_capacity": self.battery_capacity,
            "reserve_fraction": self.reserve_fraction,
            "battery": {
                "soc_grid": list(self.battery.soc_grid),
                "voltage_v": list(self.battery.voltage_v),
                "internal_resistance_ohm": self.battery.internal_resistance_ohm,
                "capacity_kwh": self.battery.capacity_kwh,
            },
            "motor": {
                "speeds_kmh": list(self.motor.speeds_kmh),
                "torques_nm": list(self.motor.torques_nm),
                "efficiency": [list(r) for r in self.motor.efficiency],
            },
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "VehicleSpec":
        doc = json.loads(text)
        battery = doc.pop("battery", None)
        motor = doc.pop("motor", None)
        kwargs = dict(doc)
        if battery is not None:
            kwargs["battery"] = BatteryModel(
                soc_grid=tuple(battery["soc_grid"]),
                voltage_v=tuple(battery["voltage_v"]),
                internal_resistance_ohm=battery["internal_resistance_ohm"],
                capacity_kwh=battery["capacity_kwh"],
            )
        if motor is not None:
            kwargs["motor"] = MotorEfficiencyMap(
                speeds_kmh=tuple(motor["speeds_kmh"]),
                torques_nm=tuple(motor["torques_nm"]),
                efficiency=tuple(tuple(r) for r in motor["efficiency"]),
            )
        return cls(**kwargs)


def load_vehicle_spec(path: str) -> VehicleSpec:
    with open(path) as f:
        return VehicleSpec.from_json(f.read())
