"""Linearized energy-flow model of the reconfigurable primary heating network.

Pipes carry signed heat-quantity variables (negative = flow against the
reference direction) bounded by the open/closed status, with a constant
per-period heat loss charged to open pipes.  Valve switching follows
status-transition logic with a minimum switching interval and a constant
open-pipe count, which keeps heat stations hydraulically isolated on radial
networks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance, Pipe, by_id
from .milp.model import MilpModel

MW = 1e6  # W per MWth


def pipe_heat_capacity(pipe: Pipe, nodes: dict, constants) -> float:
    """Heat-quantity bound for one pipe, MWth.

    Worst-case carrying capacity: design mass flow times the widest
    supply/return temperature split seen at the pipe's endpoints.
    """
    a = nodes[pipe.from_node]
    b = nodes[pipe.to_node]
    sup_hi = max(a.supply_temp_bounds[1], b.supply_temp_bounds[1])
    ret_lo = min(a.return_temp_bounds[0], b.return_temp_bounds[0])
    window = max(0.0, sup_hi - ret_lo)
    m_max = max(pipe.m_max_supply, pipe.m_max_return)
    return constants.c * m_max * window / MW


def constant_pipe_loss(pipe: Pipe, nodes: dict, ambient, constants) -> list[float]:
    """Per-period constant heat loss of one pipe, MWth.

    Evaluates the flow-independent first-order loss at the from-node's lower
    temperature bounds; the natural unit of the expression is watts, converted
    to MWth here (see docs/instance-format.md for the conductivity convention).
    """
    node = nodes[pipe.from_node]
    tau_s = node.supply_temp_bounds[0]
    tau_r = node.return_temp_bounds[0]
    coeff = pipe.conductivity * pipe.length / (pipe.cross_area * constants.rho)
    return [max(0.0, coeff * (tau_s + tau_r - 2.0 * tau_am)) / MW for tau_am in ambient]


def pipe_losses(instance: Instance) -> dict[str, list[float]]:
    nodes = by_id(instance.dhn_nodes)
    return {p.id: constant_pipe_loss(p, nodes, instance.ambient_temp,
                                     instance.constants)
            for p in instance.pipes}


def station_heat_capacity(instance: Instance, station) -> float:
    chp = by_id(instance.chp_units)
    boilers = by_id(instance.boilers)
    total = sum(chp[u].region.h_bounds()[1] for u in station.chp_units)
    total += sum(boilers[b].h_max for b in station.boilers)
    return total


def declare_variables(instance: Instance, model: MilpModel) -> None:
    nodes = by_id(instance.dhn_nodes)
    for station in instance.heat_stations:
        cap = station_heat_capacity(instance, station)
        for t in instance.periods:
            model.add_variable(f"hhs_{station.id}_t{t}", lb=0.0, ub=cap)
    for hes in instance.heat_exchange_stations:
        for t in instance.periods:
            # the heat drawn by an exchange station is its demand profile
            d = hes.demand[t - 1]
            model.add_variable(f"hhes_{hes.id}_t{t}", lb=d, ub=d)
    for pipe in instance.pipes:
        cap = pipe_heat_capacity(pipe, nodes, instance.constants)
        for t in instance.periods:
            model.add_variable(f"hin_{pipe.id}_t{t}", lb=-cap, ub=cap)
            model.add_variable(f"hout_{pipe.id}_t{t}", lb=-cap, ub=cap)
    for pipe in instance.pipes:
        for t in instance.periods:
            model.add_binary(f"mu_{pipe.id}_t{t}")
            model.add_binary(f"xr_{pipe.id}_t{t}")
            model.add_binary(f"yr_{pipe.id}_t{t}")
    # pipes without a remote valve (or a frozen topology) cannot move
    for pipe in instance.pipes:
        if instance.options.fixed_topology or not pipe.has_valve:
            status = 1.0 if pipe.initially_open else 0.0
            for t in instance.periods:
                model.fix_variable(f"mu_{pipe.id}_t{t}", status)
                model.fix_variable(f"xr_{pipe.id}_t{t}", 0.0)
                model.fix_variable(f"yr_{pipe.id}_t{t}", 0.0)


def build_flow_constraints(instance: Instance, model: MilpModel) -> None:
    """Station aggregation, nodal heat balance, loss coupling, status bounds
    and the CHP heat/commitment link."""
    nodes = by_id(instance.dhn_nodes)
    losses = pipe_losses(instance)

    for station in instance.heat_stations:
        for t in instance.periods:
            terms = {f"hchp_{u}_t{t}": 1.0 for u in station.chp_units}
            terms.update({f"hhb_{b}_t{t}": 1.0 for b in station.boilers})
            terms[f"hhs_{station.id}_t{t}"] = -1.0
            model.add_constraint(f"station_agg_{station.id}_t{t}", terms, "=", 0.0)

    pipes_out: dict[str, list[Pipe]] = {n.id: [] for n in instance.dhn_nodes}
    pipes_in: dict[str, list[Pipe]] = {n.id: [] for n in instance.dhn_nodes}
    for pipe in instance.pipes:
        pipes_out[pipe.from_node].append(pipe)
        pipes_in[pipe.to_node].append(pipe)
    stations_at: dict[str, list[str]] = {n.id: [] for n in instance.dhn_nodes}
    for s in instance.heat_stations:
        stations_at[s.node].append(s.id)
    hes_at: dict[str, list[str]] = {n.id: [] for n in instance.dhn_nodes}
    for h in instance.heat_exchange_stations:
        hes_at[h.node].append(h.id)

    for node in instance.dhn_nodes:
        nid = node.id
        if not (pipes_out[nid] or pipes_in[nid] or stations_at[nid] or hes_at[nid]):
            continue  # isolated node contributes nothing
        for t in instance.periods:
            terms: dict[str, float] = {}
            for pipe in pipes_in[nid]:
                terms[f"hout_{pipe.id}_t{t}"] = 1.0
            for s in stations_at[nid]:
                terms[f"hhs_{s}_t{t}"] = 1.0
            for h in hes_at[nid]:
                terms[f"hhes_{h}_t{t}"] = -1.0
            for pipe in pipes_out[nid]:
                terms[f"hin_{pipe.id}_t{t}"] = -1.0
            model.add_constraint(f"heat_balance_{nid}_t{t}", terms, "=", 0.0)

    for pipe in instance.pipes:
        loss = losses[pipe.id]
        for t in instance.periods:
            # closed pipes are loss-free: the loss term activates with mu
            model.add_constraint(
                f"pipe_loss_{pipe.id}_t{t}",
                {f"hout_{pipe.id}_t{t}": 1.0, f"hin_{pipe.id}_t{t}": -1.0,
                 f"mu_{pipe.id}_t{t}": loss[t - 1]},
                "=", 0.0)

    for pipe in instance.pipes:
        cap = pipe_heat_capacity(pipe, nodes, instance.constants)
        for t in instance.periods:
            mu = f"mu_{pipe.id}_t{t}"
            for var, tag in ((f"hin_{pipe.id}_t{t}", "in"),
                             (f"hout_{pipe.id}_t{t}", "out")):
                model.add_constraint(f"pipe_cap_{tag}_hi_{pipe.id}_t{t}",
                                     {var: 1.0, mu: -cap}, "<=", 0.0)
                model.add_constraint(f"pipe_cap_{tag}_lo_{pipe.id}_t{t}",
                                     {var: -1.0, mu: -cap}, "<=", 0.0)

    for unit in instance.chp_units:
        h_lo, h_hi = unit.region.h_bounds()
        for t in instance.periods:
            model.add_constraint(
                f"chp_link_hi_{unit.id}_t{t}",
                {f"hchp_{unit.id}_t{t}": 1.0, f"u_{unit.id}_t{t}": -h_hi},
                "<=", 0.0)
            model.add_constraint(
                f"chp_link_lo_{unit.id}_t{t}",
                {f"hchp_{unit.id}_t{t}": -1.0, f"u_{unit.id}_t{t}": h_lo},
                "<=", 0.0)


def build_valve_constraints(instance: Instance, model: MilpModel) -> None:
    """Status transitions, minimum switching interval, constant open count."""
    for pipe in instance.pipes:
        initial = 1.0 if pipe.initially_open else 0.0
        for t in instance.periods:
            terms = {f"mu_{pipe.id}_t{t}": 1.0,
                     f"xr_{pipe.id}_t{t}": -1.0,
                     f"yr_{pipe.id}_t{t}": 1.0}
            if t == 1:
                model.add_constraint(f"valve_logic_{pipe.id}_t{t}", terms, "=", initial)
            else:
                terms[f"mu_{pipe.id}_t{t - 1}"] = -1.0
                model.add_constraint(f"valve_logic_{pipe.id}_t{t}", terms, "=", 0.0)

        mr = pipe.min_switch_interval
        for t in instance.periods:
            window = range(max(1, t - mr + 1), t + 1)
            terms = {f"xr_{pipe.id}_t{s}": 1.0 for s in window}
            terms[f"mu_{pipe.id}_t{t}"] = -1.0
            model.add_constraint(f"valve_open_interval_{pipe.id}_t{t}", terms, "<=", 0.0)
            terms = {f"yr_{pipe.id}_t{s}": 1.0 for s in window}
            terms[f"mu_{pipe.id}_t{t}"] = 1.0
            model.add_constraint(f"valve_close_interval_{pipe.id}_t{t}", terms, "<=", 1.0)

    if instance.pipes:
        open_count = float(sum(1 for p in instance.pipes if p.initially_open))
        for t in instance.periods:
            terms = {f"mu_{p.id}_t{t}": 1.0 for p in instance.pipes}
            model.add_constraint(f"valve_open_count_t{t}", terms, "=", open_count)


# ---------------------------------------------------------------------------
# solution-side views
# ---------------------------------------------------------------------------

def open_pipes_at(instance: Instance, values: dict[str, float], t: int) -> set[str]:
    return {p.id for p in instance.pipes if values.get(f"mu_{p.id}_t{t}", 0.0) > 0.5}


def components_at(instance: Instance, open_pipes: set[str]) -> list[set[str]]:
    """Connected node sets of the active (open-pipe) network."""
    adj: dict[str, list[str]] = {n.id: [] for n in instance.dhn_nodes}
    for p in instance.pipes:
        if p.id in open_pipes:
            adj[p.from_node].append(p.to_node)
            adj[p.to_node].append(p.from_node)
    seen: set[str] = set()
    comps = []
    for node in instance.dhn_nodes:
        if node.id in seen:
            continue
        stack, comp = [node.id], set()
        while stack:
            cur = stack.pop()
            if cur in comp:
                continue
            comp.add(cur)
            stack.extend(v for v in adj[cur] if v not in comp)
        seen |= comp
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class StationService:
    station: str
    period: int
    hes_served: tuple[str, ...]
    supplied: float   # MWth produced by the station
    demand: float     # MWth drawn by the served exchange stations
    losses: float     # MWth lost in the component's open pipes
    residual: float   # supplied - demand - losses


def station_supply_ledger(instance: Instance, values: dict[str, float]
                          ) -> tuple[list[StationService], list[str]]:
    """Assign exchange stations and losses to heat stations by traversing the
    active network; returns per-station service rows plus isolation
    diagnostics for components without exactly one station."""
    losses = pipe_losses(instance)
    station_node = {s.id: s.node for s in instance.heat_stations}
    hes_node = {h.id: h.node for h in instance.heat_exchange_stations}
    rows: list[StationService] = []
    diagnostics: list[str] = []

    for t in instance.periods:
        open_ids = open_pipes_at(instance, values, t)
        for comp in components_at(instance, open_ids):
            stations = [s for s, n in station_node.items() if n in comp]
            hes = [h for h, n in hes_node.items() if n in comp]
            comp_pipes = [p for p in instance.pipes
                          if p.id in open_ids and p.from_node in comp]
            if not stations and not hes:
                continue  # bare junction fragment carries nothing
            if len(stations) != 1:
                diagnostics.append(
                    f"t{t}: isolation violated: component {sorted(comp)} contains "
                    f"{len(stations)} heat stations")
                continue
            supplied = values.get(f"hhs_{stations[0]}_t{t}", 0.0)
            demand = sum(values.get(f"hhes_{h}_t{t}", 0.0) for h in hes)
            active = sum(losses[p.id][t - 1] for p in comp_pipes)
            rows.append(StationService(
                station=stations[0], period=t, hes_served=tuple(sorted(hes)),
                supplied=supplied, demand=demand, losses=active,
                residual=supplied - demand - active))
    return rows, diagnostics


def heat_balance_residuals(instance: Instance, values: dict[str, float]) -> list[float]:
    """Per-period residual of global conservation:
    sum(station heat) - sum(HES heat) - sum(open-pipe losses)."""
    losses = pipe_losses(instance)
    out = []
    for t in instance.periods:
        supplied = sum(values.get(f"hhs_{s.id}_t{t}", 0.0)
                       for s in instance.heat_stations)
        drawn = sum(values.get(f"hhes_{h.id}_t{t}", 0.0)
                    for h in instance.heat_exchange_stations)
        lost = sum(losses[p.id][t - 1]
                   for p in instance.pipes
                   if values.get(f"mu_{p.id}_t{t}", 0.0) > 0.5)
        out.append(supplied - drawn - lost)
    return out


def valve_open_counts(instance: Instance, values: dict[str, float]) -> list[int]:
    return [sum(1 for p in instance.pipes
                if values.get(f"mu_{p.id}_t{t}", 0.0) > 0.5)
            for t in instance.periods]
