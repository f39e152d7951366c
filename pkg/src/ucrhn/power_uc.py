"""Power-system unit-commitment constraints and cost terms.

System-wide balance, shift-factor line limits, generation/ramp/min-time
logic, and spinning reserve through auxiliary headroom variables.  Costs are
returned as tagged linear terms plus quadratic terms that the assembler
piecewise-linearizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .heat_sources import chp_interpolated_cost_terms
from .instance import Instance, ThermalUnit
from .milp.model import MilpModel


def reserve_units(instance: Instance) -> tuple[ThermalUnit, ...]:
    if instance.options.reserve_scope == "tu_chp":
        return instance.all_units()
    return instance.thermal_units


def declare_variables(instance: Instance, model: MilpModel) -> None:
    for unit in instance.all_units():
        for t in instance.periods:
            model.add_binary(f"u_{unit.id}_t{t}")
            model.add_binary(f"x_{unit.id}_t{t}")
            model.add_binary(f"y_{unit.id}_t{t}")
    for unit in instance.all_units():
        for t in instance.periods:
            model.add_variable(f"p_{unit.id}_t{t}", lb=0.0, ub=unit.p_max)
    for farm in instance.wind_farms:
        for t in instance.periods:
            model.add_variable(f"pwd_{farm.id}_t{t}", lb=0.0,
                               ub=farm.available[t - 1])
    for bus in instance.buses:
        for t in instance.periods:
            model.add_variable(f"ploss_{bus.id}_t{t}", lb=0.0,
                               ub=max(bus.demand[t - 1], 0.0))
    for unit in reserve_units(instance):
        for t in instance.periods:
            model.add_variable(f"rup_{unit.id}_t{t}", lb=0.0, ub=unit.ramp_up)
            model.add_variable(f"rdn_{unit.id}_t{t}", lb=0.0, ub=unit.ramp_down)


def build_balance_and_flow(instance: Instance, model: MilpModel) -> None:
    """One system-wide energy balance per period and two flow limits per
    transmission line per period."""
    units_at: dict[str, list[str]] = {b.id: [] for b in instance.buses}
    for unit in instance.all_units():
        units_at[unit.bus].append(unit.id)
    wind_at: dict[str, list[str]] = {b.id: [] for b in instance.buses}
    for farm in instance.wind_farms:
        wind_at[farm.bus].append(farm.id)

    for t in instance.periods:
        terms = {f"p_{u.id}_t{t}": 1.0 for u in instance.all_units()}
        terms.update({f"pwd_{w.id}_t{t}": 1.0 for w in instance.wind_farms})
        terms.update({f"ploss_{b.id}_t{t}": 1.0 for b in instance.buses})
        total_demand = sum(b.demand[t - 1] for b in instance.buses)
        model.add_constraint(f"power_balance_t{t}", terms, "=", total_demand)

    for line in instance.lines:
        for t in instance.periods:
            terms: dict[str, float] = {}
            base = 0.0
            for bus in instance.buses:
                sf = line.shift_factors.get(bus.id, 0.0)
                if sf == 0.0:
                    continue
                for uid in units_at[bus.id]:
                    terms[f"p_{uid}_t{t}"] = sf
                for wid in wind_at[bus.id]:
                    terms[f"pwd_{wid}_t{t}"] = sf
                terms[f"ploss_{bus.id}_t{t}"] = sf
                base += sf * bus.demand[t - 1]
            model.add_constraint(f"line_flow_hi_{line.id}_t{t}", terms, "<=",
                                 line.capacity + base)
            neg = {k: -v for k, v in terms.items()}
            model.add_constraint(f"line_flow_lo_{line.id}_t{t}", neg, "<=",
                                 line.capacity - base)


def line_flow(instance: Instance, line_id: str, values: dict[str, float],
              t: int) -> float:
    """Actual MW flow of a line under a solution (shift factors times net
    injections)."""
    line = next(l for l in instance.lines if l.id == line_id)
    units_at: dict[str, list[str]] = {b.id: [] for b in instance.buses}
    for unit in instance.all_units():
        units_at[unit.bus].append(unit.id)
    wind_at: dict[str, list[str]] = {b.id: [] for b in instance.buses}
    for farm in instance.wind_farms:
        wind_at[farm.bus].append(farm.id)
    flow = 0.0
    for bus in instance.buses:
        sf = line.shift_factors.get(bus.id, 0.0)
        inj = sum(values.get(f"p_{u}_t{t}", 0.0) for u in units_at[bus.id])
        inj += sum(values.get(f"pwd_{w}_t{t}", 0.0) for w in wind_at[bus.id])
        inj += values.get(f"ploss_{bus.id}_t{t}", 0.0) - bus.demand[t - 1]
        flow += sf * inj
    return flow


def _initial_must_run(unit: ThermalUnit) -> tuple[int, int]:
    """Periods the unit must stay on / stay off at the start of the horizon."""
    init = unit.initial_status
    if init.on:
        return max(0, unit.min_up - init.periods), 0
    return 0, max(0, unit.min_down - init.periods)


def build_unit_constraints(instance: Instance, model: MilpModel) -> None:
    """Generation bounds, ramps with startup/shutdown allowances, status
    logic and minimum up/down times including the initial-state carry-in."""
    T = instance.horizon
    for unit in instance.all_units():
        uid = unit.id
        for t in instance.periods:
            model.add_constraint(
                f"gen_max_{uid}_t{t}",
                {f"p_{uid}_t{t}": 1.0, f"u_{uid}_t{t}": -unit.p_max}, "<=", 0.0)
            model.add_constraint(
                f"gen_min_{uid}_t{t}",
                {f"p_{uid}_t{t}": -1.0, f"u_{uid}_t{t}": unit.p_min}, "<=", 0.0)

        for t in range(1, T):
            # p[t+1] - p[t] <= RU*u[t] + SU*(1 - u[t])
            model.add_constraint(
                f"ramp_up_{uid}_t{t + 1}",
                {f"p_{uid}_t{t + 1}": 1.0, f"p_{uid}_t{t}": -1.0,
                 f"u_{uid}_t{t}": unit.startup_ramp - unit.ramp_up},
                "<=", unit.startup_ramp)
            # p[t] - p[t+1] <= RD*u[t+1] + SD*(1 - u[t+1])
            model.add_constraint(
                f"ramp_down_{uid}_t{t + 1}",
                {f"p_{uid}_t{t}": 1.0, f"p_{uid}_t{t + 1}": -1.0,
                 f"u_{uid}_t{t + 1}": unit.shutdown_ramp - unit.ramp_down},
                "<=", unit.shutdown_ramp)

        u0 = 1.0 if unit.initial_status.on else 0.0
        for t in instance.periods:
            terms = {f"u_{uid}_t{t}": 1.0, f"x_{uid}_t{t}": -1.0,
                     f"y_{uid}_t{t}": 1.0}
            if t == 1:
                model.add_constraint(f"status_logic_{uid}_t{t}", terms, "=", u0)
            else:
                terms[f"u_{uid}_t{t - 1}"] = -1.0
                model.add_constraint(f"status_logic_{uid}_t{t}", terms, "=", 0.0)

        for t in instance.periods:
            window = range(max(1, t - unit.min_up + 1), t + 1)
            terms = {f"x_{uid}_t{s}": 1.0 for s in window}
            terms[f"u_{uid}_t{t}"] = -1.0
            model.add_constraint(f"min_up_{uid}_t{t}", terms, "<=", 0.0)
            window = range(max(1, t - unit.min_down + 1), t + 1)
            terms = {f"y_{uid}_t{s}": 1.0 for s in window}
            terms[f"u_{uid}_t{t}"] = 1.0
            model.add_constraint(f"min_down_{uid}_t{t}", terms, "<=", 1.0)

        must_on, must_off = _initial_must_run(unit)
        for t in range(1, min(must_on, T) + 1):
            model.add_constraint(f"init_must_run_{uid}_t{t}",
                                 {f"u_{uid}_t{t}": 1.0}, "=", 1.0)
        for t in range(1, min(must_off, T) + 1):
            model.add_constraint(f"init_must_stay_off_{uid}_t{t}",
                                 {f"u_{uid}_t{t}": 1.0}, "=", 0.0)


def build_reserve_constraints(instance: Instance, model: MilpModel) -> None:
    """Upward/downward spinning reserve: per-unit headroom variables capped
    by ramp rate and by distance to the generation limits, summed to meet the
    system requirement."""
    units = reserve_units(instance)
    for unit in units:
        uid = unit.id
        for t in instance.periods:
            model.add_constraint(
                f"rup_headroom_{uid}_t{t}",
                {f"rup_{uid}_t{t}": 1.0, f"p_{uid}_t{t}": 1.0,
                 f"u_{uid}_t{t}": -unit.p_max}, "<=", 0.0)
            model.add_constraint(
                f"rdn_headroom_{uid}_t{t}",
                {f"rdn_{uid}_t{t}": 1.0, f"p_{uid}_t{t}": -1.0,
                 f"u_{uid}_t{t}": unit.p_min}, "<=", 0.0)
    for t in instance.periods:
        if instance.sru[t - 1] > 0.0:
            terms = {f"rup_{u.id}_t{t}": 1.0 for u in units}
            model.add_constraint(f"reserve_up_t{t}", terms, ">=", instance.sru[t - 1])
        if instance.srd[t - 1] > 0.0:
            terms = {f"rdn_{u.id}_t{t}": 1.0 for u in units}
            model.add_constraint(f"reserve_down_t{t}", terms, ">=", instance.srd[t - 1])


@dataclass
class QuadraticTerm:
    """Deferred quadratic cost a*p^2 + b*p + c charged while the unit is on."""
    p_var: str
    u_var: str
    a: float
    b: float
    c: float
    lo: float
    hi: float
    category: str
    name: str


@dataclass
class ObjectiveDraft:
    """Objective before piecewise linearization of the quadratic terms."""
    linear: list[tuple[str, float, str]] = field(default_factory=list)
    constants: dict[str, float] = field(default_factory=dict)
    quadratics: list[QuadraticTerm] = field(default_factory=list)

    def add_linear(self, var: str, coeff: float, category: str) -> None:
        self.linear.append((var, coeff, category))

    def add_constant(self, value: float, category: str) -> None:
        self.constants[category] = self.constants.get(category, 0.0) + value


def build_objective(instance: Instance) -> ObjectiveDraft:
    """Unit, boiler, wind-curtailment and load-shed cost terms.

    Curtailment is priced on spilled energy (available minus dispatched), so
    the draft carries a constant plus a negative coefficient on dispatch.
    """
    draft = ObjectiveDraft()
    hours = instance.period_hours

    for unit in instance.thermal_units:
        for t in instance.periods:
            draft.add_linear(f"x_{unit.id}_t{t}", unit.cost.startup, "tu")
            draft.add_linear(f"y_{unit.id}_t{t}", unit.cost.shutdown, "tu")
            draft.quadratics.append(QuadraticTerm(
                p_var=f"p_{unit.id}_t{t}", u_var=f"u_{unit.id}_t{t}",
                a=unit.cost.a * hours, b=unit.cost.b * hours, c=unit.cost.c * hours,
                lo=unit.p_min, hi=unit.p_max, category="tu",
                name=f"cost_{unit.id}_t{t}"))

    for unit in instance.chp_units:
        for t in instance.periods:
            draft.add_linear(f"x_{unit.id}_t{t}", unit.cost.startup, "chp")
            draft.add_linear(f"y_{unit.id}_t{t}", unit.cost.shutdown, "chp")
            if instance.options.cost_mode == "interpolated":
                for var, coeff in chp_interpolated_cost_terms(unit, t).items():
                    draft.add_linear(var, coeff * hours, "chp")
            else:
                draft.quadratics.append(QuadraticTerm(
                    p_var=f"p_{unit.id}_t{t}", u_var=f"u_{unit.id}_t{t}",
                    a=unit.cost.a * hours, b=unit.cost.b * hours,
                    c=unit.cost.c * hours,
                    lo=unit.p_min, hi=unit.p_max, category="chp",
                    name=f"cost_{unit.id}_t{t}"))

    for boiler in instance.boilers:
        price = boiler.fuel_cost / boiler.efficiency  # $ per MWth
        for t in instance.periods:
            draft.add_linear(f"hhb_{boiler.id}_t{t}", price * hours, "hb")

    for farm in instance.wind_farms:
        for t in instance.periods:
            draft.add_constant(
                farm.curtailment_price * farm.available[t - 1] * hours, "wd")
            draft.add_linear(f"pwd_{farm.id}_t{t}",
                             -farm.curtailment_price * hours, "wd")

    shed_price = instance.options.load_shed_price
    for bus in instance.buses:
        for t in instance.periods:
            draft.add_linear(f"ploss_{bus.id}_t{t}", shed_price * hours, "ls")

    return draft
