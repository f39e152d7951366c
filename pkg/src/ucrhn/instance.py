"""Domain types for the coupled power / district-heating scenario, plus
instance-file ingestion, serialization and structural validation.

An instance is a single JSON document (see docs/instance-format.md).  All
types are frozen dataclasses: an Instance never changes after construction
and is safe to share between threads; scenario variants are produced with
``dataclasses.replace`` helpers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

__all__ = [
    "InstanceError", "Diagnostic", "PhysicalConstants", "Bus",
    "TransmissionLine", "QuadraticCost", "InitialStatus", "ThermalUnit",
    "ChpOperatingRegion", "ChpUnit", "HeatingBoiler", "HeatStation",
    "HeatExchangeStation", "DhnNode", "Pipe", "WindFarm", "Options",
    "Instance", "load_instance", "load_instance_dict", "save_instance",
    "instance_to_dict", "validate", "by_id", "with_line_capacity",
    "with_fixed_topology",
]


class InstanceError(Exception):
    """Raised on unreadable or structurally broken instance files."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    invariant: str
    message: str
    element: str = ""

    def __str__(self) -> str:
        tag = f" [{self.element}]" if self.element else ""
        return f"{self.severity}{tag} {self.invariant}: {self.message}"


@dataclass(frozen=True)
class PhysicalConstants:
    c: float    # specific heat capacity of water, J/(kg K)
    rho: float  # water density, kg/m^3


@dataclass(frozen=True)
class Bus:
    id: str
    demand: tuple[float, ...]  # MW per period


@dataclass(frozen=True)
class TransmissionLine:
    id: str
    capacity: float  # MW
    shift_factors: dict[str, float]  # bus id -> MW flow per MW injection


@dataclass(frozen=True)
class QuadraticCost:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    startup: float = 0.0
    shutdown: float = 0.0


@dataclass(frozen=True)
class InitialStatus:
    on: bool
    periods: int  # periods already spent in the current state, >= 1


@dataclass(frozen=True)
class ThermalUnit:
    id: str
    bus: str
    p_min: float
    p_max: float
    ramp_up: float
    ramp_down: float
    startup_ramp: float
    shutdown_ramp: float
    min_up: int
    min_down: int
    initial_status: InitialStatus
    cost: QuadraticCost


@dataclass(frozen=True)
class ChpOperatingRegion:
    extreme_points: tuple[tuple[float, float], ...]  # (MW, MWth) vertices
    cost_at_points: tuple[float, ...]

    def p_bounds(self) -> tuple[float, float]:
        ps = [p for p, _ in self.extreme_points]
        return min(ps), max(ps)

    def h_bounds(self) -> tuple[float, float]:
        hs = [h for _, h in self.extreme_points]
        return min(hs), max(hs)


@dataclass(frozen=True)
class ChpUnit(ThermalUnit):
    region: ChpOperatingRegion = None  # type: ignore[assignment]
    heat_station: str = ""


@dataclass(frozen=True)
class HeatingBoiler:
    id: str
    heat_station: str
    efficiency: float   # heat output per unit fuel, 0 < eta <= 1
    h_max: float        # MWth
    fuel_cost: float    # $ per unit fuel


@dataclass(frozen=True)
class HeatStation:
    id: str
    node: str
    chp_units: tuple[str, ...]
    boilers: tuple[str, ...]


@dataclass(frozen=True)
class HeatExchangeStation:
    id: str
    node: str
    demand: tuple[float, ...]  # MWth per period


@dataclass(frozen=True)
class DhnNode:
    id: str
    supply_temp_bounds: tuple[float, float]  # degC
    return_temp_bounds: tuple[float, float]  # degC


@dataclass(frozen=True)
class Pipe:
    id: str
    from_node: str
    to_node: str
    length: float        # m
    cross_area: float    # m^2
    conductivity: float  # lumped loss coefficient, see docs/instance-format.md
    m_max_supply: float  # kg/s
    m_max_return: float  # kg/s
    has_valve: bool
    min_switch_interval: int
    initially_open: bool


@dataclass(frozen=True)
class WindFarm:
    id: str
    bus: str
    available: tuple[float, ...]  # MW per period
    curtailment_price: float      # $/MWh


@dataclass(frozen=True)
class Options:
    cost_mode: str = "interpolated"     # "interpolated" | "quadratic"
    reserve_scope: str = "tu"           # "tu" | "tu_chp"
    fixed_topology: bool = False
    load_shed_price: float = 1000.0     # $/MWh


@dataclass(frozen=True)
class Instance:
    name: str
    horizon: int
    period_hours: float
    constants: PhysicalConstants
    ambient_temp: tuple[float, ...]
    buses: tuple[Bus, ...]
    lines: tuple[TransmissionLine, ...]
    thermal_units: tuple[ThermalUnit, ...]
    chp_units: tuple[ChpUnit, ...]
    wind_farms: tuple[WindFarm, ...]
    dhn_nodes: tuple[DhnNode, ...]
    pipes: tuple[Pipe, ...]
    heat_stations: tuple[HeatStation, ...]
    boilers: tuple[HeatingBoiler, ...]
    heat_exchange_stations: tuple[HeatExchangeStation, ...]
    sru: tuple[float, ...]
    srd: tuple[float, ...]
    options: Options = field(default_factory=Options)

    @property
    def periods(self) -> range:
        return range(1, self.horizon + 1)

    def all_units(self) -> tuple[ThermalUnit, ...]:
        return self.thermal_units + self.chp_units

    def total_heat_demand(self, t: int) -> float:
        return sum(h.demand[t - 1] for h in self.heat_exchange_stations)

    def heat_peak_valley_periods(self) -> tuple[int, int]:
        """Periods of maximum and minimum total heat demand."""
        totals = [self.total_heat_demand(t) for t in self.periods]
        peak = max(self.periods, key=lambda t: totals[t - 1])
        valley = min(self.periods, key=lambda t: totals[t - 1])
        return peak, valley


def by_id(elements) -> dict:
    return {e.id: e for e in elements}


def with_line_capacity(instance: Instance, line_id: str, capacity: float) -> Instance:
    lines = []
    found = False
    for line in instance.lines:
        if line.id == line_id:
            lines.append(replace(line, capacity=float(capacity)))
            found = True
        else:
            lines.append(line)
    if not found:
        raise InstanceError(f"unknown line {line_id!r}", "lines")
    return replace(instance, lines=tuple(lines))


def with_fixed_topology(instance: Instance, fixed: bool = True) -> Instance:
    return replace(instance, options=replace(instance.options, fixed_topology=fixed))


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

class _Reader:
    """Dict access with breadcrumb error context."""

    def __init__(self, data: dict, where: str):
        if not isinstance(data, dict):
            raise InstanceError("expected an object", where)
        self.data = data
        self.where = where

    def req(self, key: str):
        if key not in self.data:
            raise InstanceError(f"missing required field {key!r}", self.where)
        return self.data[key]

    def opt(self, key: str, default=None):
        return self.data.get(key, default)

    def num(self, key: str, default=None) -> float:
        raw = self.req(key) if default is None else self.opt(key, default)
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise InstanceError(f"field {key!r} must be a number", self.where)
        return float(raw)

    def integer(self, key: str, default=None) -> int:
        raw = self.req(key) if default is None else self.opt(key, default)
        if not isinstance(raw, int) or isinstance(raw, bool):
            raise InstanceError(f"field {key!r} must be an integer", self.where)
        return raw

    def text(self, key: str) -> str:
        raw = self.req(key)
        if not isinstance(raw, str):
            raise InstanceError(f"field {key!r} must be a string", self.where)
        return raw

    def sub(self, key: str) -> "_Reader":
        return _Reader(self.req(key), f"{self.where}.{key}")

    def list_of(self, key: str) -> list["_Reader"]:
        raw = self.opt(key, [])
        if not isinstance(raw, list):
            raise InstanceError(f"field {key!r} must be a list", self.where)
        return [_Reader(item, f"{self.where}.{key}[{i}]") for i, item in enumerate(raw)]


def _series(values, horizon: int, where: str) -> tuple[float, ...]:
    if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise InstanceError("profile must be a list of numbers", where)
    if len(values) != horizon:
        raise InstanceError(
            f"series length {len(values)} does not match horizon {horizon}", where)
    return tuple(float(v) for v in values)


def _profile(profiles: dict, group: str, element_id: str, horizon: int,
             required: bool, where: str) -> tuple[float, ...]:
    table = profiles.get(group, {})
    if not isinstance(table, dict):
        raise InstanceError(f"profiles.{group} must be an object keyed by id", where)
    if element_id not in table:
        if required:
            raise InstanceError(f"missing profiles.{group}[{element_id!r}]", where)
        return tuple(0.0 for _ in range(horizon))
    return _series(table[element_id], horizon, f"profiles.{group}[{element_id!r}]")


def _initial_status(r: _Reader) -> InitialStatus:
    sub = r.sub("initial_status")
    on = sub.req("on")
    if not isinstance(on, bool):
        raise InstanceError("field 'on' must be a boolean", sub.where)
    periods = sub.integer("periods")
    if periods < 1:
        raise InstanceError("'periods' in state must be >= 1", sub.where)
    return InitialStatus(on=on, periods=periods)


def _cost(r: _Reader) -> QuadraticCost:
    sub = r.sub("cost")
    return QuadraticCost(a=sub.num("a", 0.0), b=sub.num("b", 0.0), c=sub.num("c", 0.0),
                         startup=sub.num("startup", 0.0), shutdown=sub.num("shutdown", 0.0))


def _unit_fields(r: _Reader, horizon: int) -> dict:
    return dict(
        id=r.text("id"), bus=r.text("bus"),
        p_min=r.num("p_min"), p_max=r.num("p_max"),
        ramp_up=r.num("ramp_up"), ramp_down=r.num("ramp_down"),
        startup_ramp=r.num("startup_ramp"), shutdown_ramp=r.num("shutdown_ramp"),
        min_up=r.integer("min_up"), min_down=r.integer("min_down"),
        initial_status=_initial_status(r), cost=_cost(r))


def load_instance_dict(data: dict, name: str = "instance") -> Instance:
    root = _Reader(data, name)
    meta = root.sub("meta")
    horizon = meta.integer("horizon")
    if horizon < 1:
        raise InstanceError("horizon must be >= 1", meta.where)
    period_hours = meta.num("period_hours", 1.0)
    inst_name = meta.opt("name", name)

    consts = root.sub("constants")
    constants = PhysicalConstants(c=consts.num("c"), rho=consts.num("rho"))

    profiles = root.opt("profiles", {})
    if not isinstance(profiles, dict):
        raise InstanceError("profiles must be an object", name)

    power = root.sub("power")
    buses = tuple(
        Bus(id=r.text("id"),
            demand=_profile(profiles, "demand", r.text("id"), horizon, False, r.where))
        for r in power.list_of("buses"))
    bus_ids = {b.id for b in buses}

    lines = []
    for r in power.list_of("lines"):
        sf_raw = r.req("shift_factors")
        if not isinstance(sf_raw, dict):
            raise InstanceError("shift_factors must be an object", r.where)
        sf = {}
        for bus, value in sf_raw.items():
            if bus not in bus_ids:
                raise InstanceError(f"shift factor references unknown bus {bus!r}", r.where)
            sf[bus] = float(value)
        lines.append(TransmissionLine(id=r.text("id"), capacity=r.num("capacity"),
                                      shift_factors=sf))
    lines = tuple(lines)

    thermal_units = []
    for r in power.list_of("thermal_units"):
        fields_ = _unit_fields(r, horizon)
        if fields_["bus"] not in bus_ids:
            raise InstanceError(f"unknown bus {fields_['bus']!r}", r.where)
        thermal_units.append(ThermalUnit(**fields_))
    thermal_units = tuple(thermal_units)

    chp_units = []
    for r in power.list_of("chp_units"):
        fields_ = _unit_fields(r, horizon)
        if fields_["bus"] not in bus_ids:
            raise InstanceError(f"unknown bus {fields_['bus']!r}", r.where)
        reg = r.sub("region")
        pts_raw = reg.req("extreme_points")
        if (not isinstance(pts_raw, list)
                or any(not isinstance(p, list) or len(p) != 2 for p in pts_raw)):
            raise InstanceError("extreme_points must be a list of [p, h] pairs", reg.where)
        points = tuple((float(p), float(h)) for p, h in pts_raw)
        costs_raw = reg.req("cost_at_points")
        if not isinstance(costs_raw, list) or len(costs_raw) != len(points):
            raise InstanceError("cost_at_points must match extreme_points in length",
                                reg.where)
        region = ChpOperatingRegion(points, tuple(float(c) for c in costs_raw))
        chp_units.append(ChpUnit(region=region, heat_station=r.text("heat_station"),
                                 **fields_))
    chp_units = tuple(chp_units)

    wind_farms = tuple(
        WindFarm(id=r.text("id"), bus=r.text("bus"),
                 available=_profile(profiles, "wind", r.text("id"), horizon, True, r.where),
                 curtailment_price=r.num("curtailment_price"))
        for r in power.list_of("wind_farms"))
    for w in wind_farms:
        if w.bus not in bus_ids:
            raise InstanceError(f"wind farm {w.id!r} references unknown bus {w.bus!r}",
                                "power.wind_farms")

    heat = root.sub("heat") if "heat" in root.data else _Reader({}, f"{name}.heat")
    nodes = []
    for r in heat.list_of("nodes"):
        sb = r.req("supply_temp_bounds")
        rb = r.req("return_temp_bounds")
        for label, pair in (("supply_temp_bounds", sb), ("return_temp_bounds", rb)):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InstanceError(f"{label} must be a [lo, hi] pair", r.where)
        nodes.append(DhnNode(id=r.text("id"),
                             supply_temp_bounds=(float(sb[0]), float(sb[1])),
                             return_temp_bounds=(float(rb[0]), float(rb[1]))))
    nodes = tuple(nodes)
    node_ids = {n.id for n in nodes}

    pipes = []
    for r in heat.list_of("pipes"):
        status = r.opt("initial_status", "open")
        if status not in ("open", "closed"):
            raise InstanceError("initial_status must be 'open' or 'closed'", r.where)
        pipe = Pipe(id=r.text("id"), from_node=r.text("from_node"),
                    to_node=r.text("to_node"), length=r.num("length"),
                    cross_area=r.num("cross_area"), conductivity=r.num("conductivity"),
                    m_max_supply=r.num("m_max_supply"), m_max_return=r.num("m_max_return"),
                    has_valve=bool(r.opt("has_valve", True)),
                    min_switch_interval=r.integer("min_switch_interval", 1),
                    initially_open=(status == "open"))
        for end in (pipe.from_node, pipe.to_node):
            if end not in node_ids:
                raise InstanceError(f"pipe {pipe.id!r} references unknown node {end!r}",
                                    r.where)
        pipes.append(pipe)
    pipes = tuple(pipes)

    boilers = tuple(
        HeatingBoiler(id=r.text("id"), heat_station=r.text("heat_station"),
                      efficiency=r.num("efficiency"), h_max=r.num("h_max"),
                      fuel_cost=r.num("fuel_cost"))
        for r in heat.list_of("boilers"))

    stations = []
    for r in heat.list_of("heat_stations"):
        chp_ids = r.opt("chp_units", [])
        boiler_ids = r.opt("boilers", [])
        st = HeatStation(id=r.text("id"), node=r.text("node"),
                         chp_units=tuple(chp_ids), boilers=tuple(boiler_ids))
        if st.node not in node_ids:
            raise InstanceError(f"station {st.id!r} references unknown node {st.node!r}",
                                r.where)
        stations.append(st)
    stations = tuple(stations)

    hes = tuple(
        HeatExchangeStation(
            id=r.text("id"), node=r.text("node"),
            demand=_profile(profiles, "heat_demand", r.text("id"), horizon, True, r.where))
        for r in heat.list_of("hes"))
    for h in hes:
        if h.node not in node_ids:
            raise InstanceError(f"HES {h.id!r} references unknown node {h.node!r}",
                                "heat.hes")

    # cross links between stations and their sources
    chp_ids = {u.id for u in chp_units}
    boiler_ids = {b.id for b in boilers}
    station_ids = {s.id for s in stations}
    for s in stations:
        for uid in s.chp_units:
            if uid not in chp_ids:
                raise InstanceError(f"station {s.id!r} lists unknown CHP {uid!r}",
                                    "heat.heat_stations")
        for bid in s.boilers:
            if bid not in boiler_ids:
                raise InstanceError(f"station {s.id!r} lists unknown boiler {bid!r}",
                                    "heat.heat_stations")
    for u in chp_units:
        if u.heat_station not in station_ids:
            raise InstanceError(
                f"CHP {u.id!r} references unknown heat station {u.heat_station!r}",
                "power.chp_units")
    for b in boilers:
        if b.heat_station not in station_ids:
            raise InstanceError(
                f"boiler {b.id!r} references unknown heat station {b.heat_station!r}",
                "heat.boilers")

    ambient = (_series(profiles["ambient"], horizon, "profiles.ambient")
               if "ambient" in profiles else tuple(0.0 for _ in range(horizon)))
    sru = (_series(profiles["sru"], horizon, "profiles.sru")
           if "sru" in profiles else tuple(0.0 for _ in range(horizon)))
    srd = (_series(profiles["srd"], horizon, "profiles.srd")
           if "srd" in profiles else tuple(0.0 for _ in range(horizon)))

    opts_raw = root.opt("options", {})
    if not isinstance(opts_raw, dict):
        raise InstanceError("options must be an object", name)
    opts = _Reader(opts_raw, f"{name}.options")
    options = Options(
        cost_mode=opts.opt("cost_mode", "interpolated"),
        reserve_scope=opts.opt("reserve_scope", "tu"),
        fixed_topology=bool(opts.opt("fixed_topology", False)),
        load_shed_price=opts.num("load_shed_price", 1000.0))
    if options.cost_mode not in ("interpolated", "quadratic"):
        raise InstanceError(f"unknown cost_mode {options.cost_mode!r}", opts.where)
    if options.reserve_scope not in ("tu", "tu_chp"):
        raise InstanceError(f"unknown reserve_scope {options.reserve_scope!r}", opts.where)

    ids_seen: set[str] = set()
    for group in (buses, lines, thermal_units, chp_units, wind_farms, nodes,
                  pipes, stations, boilers, hes):
        for e in group:
            if any(ch.isspace() for ch in e.id) or not e.id:
                raise InstanceError(f"invalid element id {e.id!r}", name)
            if e.id in ids_seen:
                raise InstanceError(f"duplicate element id {e.id!r}", name)
            ids_seen.add(e.id)

    return Instance(
        name=inst_name, horizon=horizon, period_hours=period_hours,
        constants=constants, ambient_temp=ambient,
        buses=buses, lines=lines, thermal_units=thermal_units,
        chp_units=chp_units, wind_farms=wind_farms,
        dhn_nodes=nodes, pipes=pipes, heat_stations=stations,
        boilers=boilers, heat_exchange_stations=hes,
        sru=sru, srd=srd, options=options)


def load_instance(path) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read instance file: {exc}", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            str(path)) from exc
    return load_instance_dict(data, name=str(path))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def instance_to_dict(instance: Instance) -> dict:
    def unit_dict(u: ThermalUnit) -> dict:
        return {
            "id": u.id, "bus": u.bus, "p_min": u.p_min, "p_max": u.p_max,
            "ramp_up": u.ramp_up, "ramp_down": u.ramp_down,
            "startup_ramp": u.startup_ramp, "shutdown_ramp": u.shutdown_ramp,
            "min_up": u.min_up, "min_down": u.min_down,
            "initial_status": {"on": u.initial_status.on,
                               "periods": u.initial_status.periods},
            "cost": {"a": u.cost.a, "b": u.cost.b, "c": u.cost.c,
                     "startup": u.cost.startup, "shutdown": u.cost.shutdown},
        }

    data = {
        "meta": {"name": instance.name, "horizon": instance.horizon,
                 "period_hours": instance.period_hours},
        "constants": {"c": instance.constants.c, "rho": instance.constants.rho},
        "power": {
            "buses": [{"id": b.id} for b in instance.buses],
            "lines": [{"id": l.id, "capacity": l.capacity,
                       "shift_factors": dict(l.shift_factors)}
                      for l in instance.lines],
            "thermal_units": [unit_dict(u) for u in instance.thermal_units],
            "chp_units": [
                {**unit_dict(u), "heat_station": u.heat_station,
                 "region": {
                     "extreme_points": [[p, h] for p, h in u.region.extreme_points],
                     "cost_at_points": list(u.region.cost_at_points)}}
                for u in instance.chp_units],
            "wind_farms": [{"id": w.id, "bus": w.bus,
                            "curtailment_price": w.curtailment_price}
                           for w in instance.wind_farms],
        },
        "heat": {
            "nodes": [{"id": n.id,
                       "supply_temp_bounds": list(n.supply_temp_bounds),
                       "return_temp_bounds": list(n.return_temp_bounds)}
                      for n in instance.dhn_nodes],
            "pipes": [{"id": p.id, "from_node": p.from_node, "to_node": p.to_node,
                       "length": p.length, "cross_area": p.cross_area,
                       "conductivity": p.conductivity,
                       "m_max_supply": p.m_max_supply, "m_max_return": p.m_max_return,
                       "has_valve": p.has_valve,
                       "min_switch_interval": p.min_switch_interval,
                       "initial_status": "open" if p.initially_open else "closed"}
                      for p in instance.pipes],
            "heat_stations": [{"id": s.id, "node": s.node,
                               "chp_units": list(s.chp_units),
                               "boilers": list(s.boilers)}
                              for s in instance.heat_stations],
            "boilers": [{"id": b.id, "heat_station": b.heat_station,
                         "efficiency": b.efficiency, "h_max": b.h_max,
                         "fuel_cost": b.fuel_cost}
                        for b in instance.boilers],
            "hes": [{"id": h.id, "node": h.node}
                    for h in instance.heat_exchange_stations],
        },
        "profiles": {
            "demand": {b.id: list(b.demand) for b in instance.buses},
            "wind": {w.id: list(w.available) for w in instance.wind_farms},
            "heat_demand": {h.id: list(h.demand)
                            for h in instance.heat_exchange_stations},
            "ambient": list(instance.ambient_temp),
            "sru": list(instance.sru),
            "srd": list(instance.srd),
        },
        "options": {
            "cost_mode": instance.options.cost_mode,
            "reserve_scope": instance.options.reserve_scope,
            "fixed_topology": instance.options.fixed_topology,
            "load_shed_price": instance.options.load_shed_price,
        },
    }
    return data


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _polygon_orientation(points) -> list[float]:
    n = len(points)
    crosses = []
    for i in range(n):
        ax, ay = points[i]
        bx, by = points[(i + 1) % n]
        cx, cy = points[(i + 2) % n]
        crosses.append((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    return crosses


def _polygon_area(points) -> float:
    area = 0.0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        area += x0 * y1 - x1 * y0
    return area / 2.0


def validate(instance: Instance) -> list[Diagnostic]:
    """Report every violated type invariant; never raises."""
    out: list[Diagnostic] = []

    def err(invariant, message, element=""):
        out.append(Diagnostic("error", invariant, message, element))

    def warn(invariant, message, element=""):
        out.append(Diagnostic("warning", invariant, message, element))

    if instance.constants.c <= 0 or instance.constants.rho <= 0:
        err("constants-positive", "c and rho must be strictly positive")
    if instance.horizon < 1:
        err("horizon", "horizon must be >= 1")

    bus_ids = {b.id for b in instance.buses}
    for b in instance.buses:
        if any(v < 0 for v in b.demand):
            err("demand-nonnegative", "negative electrical demand", b.id)
        if len(b.demand) != instance.horizon:
            err("series-length", "demand series does not match horizon", b.id)

    for line in instance.lines:
        if line.capacity <= 0:
            err("line-capacity", "capacity must be > 0", line.id)
        missing = bus_ids - set(line.shift_factors)
        if missing:
            err("shift-factors-complete",
                f"shift factors missing for buses {sorted(missing)}", line.id)

    for u in instance.all_units():
        if not (0 <= u.p_min <= u.p_max):
            err("unit-power-bounds", f"need 0 <= p_min <= p_max, got ({u.p_min}, {u.p_max})", u.id)
        if min(u.ramp_up, u.ramp_down, u.startup_ramp, u.shutdown_ramp) < 0:
            err("unit-ramps", "ramp limits must be >= 0", u.id)
        if u.min_up < 1 or u.min_down < 1:
            err("unit-min-times", "min_up and min_down must be >= 1", u.id)
        if u.cost.a < 0:
            err("unit-cost-convex", f"quadratic coefficient a={u.cost.a} < 0", u.id)

    for u in instance.chp_units:
        pts = u.region.extreme_points
        if len(pts) < 3:
            err("chp-region-size", "operating region needs >= 3 extreme points", u.id)
            continue
        if any(h < 0 for _, h in pts):
            err("chp-region-heat", "extreme-point heat must be >= 0", u.id)
        crosses = _polygon_orientation(pts)
        area = abs(_polygon_area(pts))
        if area < 1e-9:
            err("chp-region-degenerate", "degenerate operating region (zero area)", u.id)
        elif (min(crosses) < -1e-9) and (max(crosses) > 1e-9):
            err("chp-region-convex", "extreme points are not in convex order", u.id)
        pmin, pmax = u.region.p_bounds()
        if abs(u.p_min - pmin) > 1e-6 or abs(u.p_max - pmax) > 1e-6:
            err("chp-power-consistency",
                f"p_min/p_max ({u.p_min}, {u.p_max}) differ from region extremes "
                f"({pmin}, {pmax})", u.id)

    for b in instance.boilers:
        if not (0 < b.efficiency <= 1):
            err("boiler-efficiency", f"efficiency {b.efficiency} outside (0, 1]", b.id)
        if b.h_max < 0:
            err("boiler-capacity", "h_max must be >= 0", b.id)

    station_nodes: dict[str, str] = {}
    for s in instance.heat_stations:
        if not s.chp_units and not s.boilers:
            err("station-sources", "heat station has no attached source", s.id)
        if s.node in station_nodes:
            warn("station-node-shared",
                 f"shares node {s.node!r} with station {station_nodes[s.node]!r}", s.id)
        station_nodes[s.node] = s.id

    for h in instance.heat_exchange_stations:
        if any(v < 0 for v in h.demand):
            err("hes-demand-nonnegative", "negative heat demand", h.id)

    for n in instance.dhn_nodes:
        if n.supply_temp_bounds[0] > n.supply_temp_bounds[1]:
            err("node-supply-bounds", "supply bounds out of order", n.id)
        if n.return_temp_bounds[0] > n.return_temp_bounds[1]:
            err("node-return-bounds", "return bounds out of order", n.id)

    for p in instance.pipes:
        if p.length <= 0 or p.cross_area <= 0:
            err("pipe-geometry", "length and cross_area must be > 0", p.id)
        if p.conductivity < 0:
            err("pipe-conductivity", "conductivity must be >= 0", p.id)
        if p.m_max_supply <= 0 or p.m_max_return <= 0:
            err("pipe-flow-limit", "mass flow limits must be > 0", p.id)
        if p.min_switch_interval < 1:
            err("pipe-switch-interval", "min_switch_interval must be >= 1", p.id)

    for w in instance.wind_farms:
        if any(v < 0 for v in w.available):
            err("wind-available-nonnegative", "negative wind availability", w.id)

    return out
