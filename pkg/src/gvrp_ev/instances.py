"""Solomon-format VRPTW instances: parsing, unit scaling, distances."""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np


class ParseError(ValueError):
    """Raised when an instance file is malformed; message names the line."""


@dataclass(frozen=True)
class Customer:
    """A delivery point. The depot is the customer at index 0."""

    id: int
    x: float
    y: float
    demand: float
    ready: float
    due: float
    service_time: float

    def __post_init__(self):
        if self.ready > self.due:
            raise ValueError(f"customer {self.id}: ready {self.ready} > due {self.due}")
        if self.demand < 0:
            raise ValueError(f"customer {self.id}: negative demand {self.demand}")


@dataclass(frozen=True)
class Instance:
    """A routing instance with unit scales mapping benchmark data to km/min/kg.

    distance_scale: km per coordinate unit, time_scale: minutes per time unit,
    demand_scale: kg of payload per demand unit.
    """

    name: str
    customers: tuple
    fleet_size: int
    capacity: float
    distance_scale: float = 1.0
    time_scale: float = 1.0
    demand_scale: float = 1.0
    _dist: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.fleet_size < 1:
            raise ValueError(f"fleet_size must be >= 1, got {self.fleet_size}")
        if self.capacity <= 0:
            raise ValueError(f"capacity must be positive, got {self.capacity}")
        if not self.customers:
            raise ValueError("instance has no depot")
        ids = [c.id for c in self.customers]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate customer ids")
        depot = self.customers[0]
        if depot.demand != 0 or depot.service_time != 0:
            raise ValueError("depot must have zero demand and service time")
        for c in self.customers[1:]:
            if c.demand > self.capacity:
                raise ValueError(f"customer {c.id}: demand {c.demand} exceeds capacity {self.capacity}")
        xy = np.array([(c.x, c.y) for c in self.customers])
        diff = xy[:, None, :] - xy[None, :, :]
        object.__setattr__(self, "_dist", np.hypot(diff[..., 0], diff[..., 1]) * self.distance_scale)

    @property
    def n_customers(self) -> int:
        """Number of customers excluding the depot."""
        return len(self.customers) - 1

    def distance(self, i: int, j: int) -> float:
        """Euclidean distance between nodes i and j in km (0 = depot)."""
        return float(self._dist[i, j])

    def demand_kg(self, i: int) -> float:
        """Demand of node i converted to kg of payload."""
        return self.customers[i].demand * self.demand_scale

    def ready_min(self, i: int) -> float:
        return self.customers[i].ready * self.time_scale

    def due_min(self, i: int) -> float:
        return self.customers[i].due * self.time_scale

    def service_min(self, i: int) -> float:
        return self.customers[i].service_time * self.time_scale

    def to_json(self) -> str:
        """Canonical JSON representation; round-trips all numeric fields exactly."""
        doc = {
            "name": self.name,
            "fleet_size": self.fleet_size,
            "capacity": self.capacity,
            "distance_scale": self.distance_scale,
            "time_scale": self.time_scale,
            "demand_scale": self.demand_scale,
            "customers": [
                {
                    "id": c.id,
                    "x": c.x,
                    "y": c.y,
                    "demand": c.demand,
                    "ready": c.ready,
                    "due": c.due,
                    "service_time": c.service_time,
                }
                for c in self.customers
            ],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        doc = json.loads(text)
        customers = tuple(Customer(**c) for c in doc["customers"])
        return cls(
            name=doc["name"],
            customers=customers,
            fleet_size=doc["fleet_size"],
            capacity=doc["capacity"],
            distance_scale=doc.get("distance_scale", 1.0),
            time_scale=doc.get("time_scale", 1.0),
            demand_scale=doc.get("demand_scale", 1.0),
        )


def _numeric(token: str, lineno: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: non-numeric {what} {token!r}") from None


def parse_solomon(text: str, *, distance_scale: float = 1.0, time_scale: float = 1.0,
                  demand_scale: float = 1.0) -> Instance:
    """Parse a Solomon-layout benchmark file into an Instance.

    Layout: instance name, a VEHICLE section with a NUMBER/CAPACITY row, and a
    CUSTOMER section with one row per node (depot first). Column order follows
    the published files: id, x, y, demand, ready, due, service time.
    """
    lines = text.splitlines()
    name = None
    fleet_size = None
    capacity = None
    rows = []

    i = 0
    n = len(lines)
    while i < n and not lines[i].strip():
        i += 1
    if i == n:
        raise ParseError("line 1: empty file")
    name = lines[i].strip()
    i += 1

    # VEHICLE section: skip its header row, read the number/capacity row.
    while i < n and "VEHICLE" not in lines[i].upper():
        i += 1
    if i == n:
        raise ParseError(f"line {n}: missing VEHICLE section")
    i += 1
    while i < n and ("NUMBER" in lines[i].upper() or not lines[i].strip()):
        i += 1
    if i == n:
        raise ParseError(f"line {n}: missing vehicle NUMBER/CAPACITY row")
    parts = lines[i].split()
    if len(parts) < 2:
        raise ParseError(f"line {i + 1}: malformed vehicle row {lines[i]!r}")
    fleet_size = int(_numeric(parts[0], i + 1, "fleet size"))
    capacity = _numeric(parts[1], i + 1, "capacity")
    i += 1

    while i < n and "CUSTOMER" not in lines[i].upper():
        i += 1
    if i == n:
        raise ParseError(f"line {n}: missing CUSTOMER section")
    i += 1

    seen_ids = set()
    for lineno0 in range(i, n):
        line = lines[lineno0].strip()
        lineno = lineno0 + 1
        if not line:
            continue
        if line[0].isalpha() or line.startswith("CUST"):
            continue  # column header
        parts = line.split()
        if len(parts) < 7:
            raise ParseError(f"line {lineno}: expected 7 fields, got {len(parts)}")
        vals = [_numeric(p, lineno, "field") for p in parts[:7]]
        cid = int(vals[0])
        if cid in seen_ids:
            raise ParseError(f"line {lineno}: duplicate customer id {cid}")
        seen_ids.add(cid)
        if len(rows) > 0 and vals[3] > capacity:
            raise ParseError(f"line {lineno}: demand {vals[3]} exceeds capacity {capacity}")
        if vals[4] > vals[5]:
            raise ParseError(f"line {lineno}: ready time {vals[4]} after due time {vals[5]}")
        rows.append(Customer(id=cid, x=vals[1], y=vals[2], demand=vals[3],
                             ready=vals[4], due=vals[5], service_time=vals[6]))

    if not rows:
        raise ParseError(f"line {n}: CUSTOMER section has no rows")
    depot = rows[0]
    if depot.demand != 0 or depot.service_time != 0:
        raise ParseError("line 1: depot row must have zero demand and service time")

    return Instance(name=name, customers=tuple(rows), fleet_size=fleet_size,
                    capacity=capacity, distance_scale=distance_scale,
                    time_scale=time_scale, demand_scale=demand_scale)


def load_instance(path: str, **scales) -> Instance:
    """Read an instance file, Solomon text or the canonical JSON form."""
    with open(path) as f:
        text = f.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Instance.from_json(text)
    return parse_solomon(text, **scales)


def truncate(instance: Instance, k: int) -> Instance:
    """Keep the depot plus the first k customers; fleet and capacity unchanged."""
    if not 1 <= k <= instance.n_customers:
        raise ValueError(f"k must be in [1, {instance.n_customers}], got {k}")
    return replace(instance, customers=instance.customers[: k + 1])
