"""Assembly of the full day-ahead scheduling model.

Concatenates the heat-source, network energy-flow and power-system blocks in
a fixed order, linearizes quadratic costs into epigraph segments, and offers
a one-call solve wrapper.
"""

from __future__ import annotations

from .. import dhn_flow, heat_sources, power_uc
from ..instance import Instance
from .backend import BackendConfig, default_backend, run_backend
from .linearize import piecewise_linearize
from .model import MilpModel, ScheduleSolution

DEFAULT_SEGMENTS = 8


def assemble(instance: Instance, segments: int = DEFAULT_SEGMENTS) -> MilpModel:
    """Build the complete MILP for one scenario instance.

    Variable and constraint ordering is a pure function of the instance, so
    repeated assemblies are structurally identical.
    """
    model = MilpModel(name=instance.name)

    power_uc.declare_variables(instance, model)
    heat_sources.declare_variables(instance, model)
    dhn_flow.declare_variables(instance, model)

    heat_sources.build_chp_constraints(instance, model)
    dhn_flow.build_flow_constraints(instance, model)
    dhn_flow.build_valve_constraints(instance, model)
    power_uc.build_balance_and_flow(instance, model)
    power_uc.build_unit_constraints(instance, model)
    power_uc.build_reserve_constraints(instance, model)

    draft = power_uc.build_objective(instance)
    for var, coeff, category in draft.linear:
        model.add_objective_term(var, coeff, category)
    for category, value in draft.constants.items():
        model.add_objective_constant(value, category)
    for term in draft.quadratics:
        cost_var = model.add_variable(term.name, lb=0.0)
        model.add_objective_term(term.name, 1.0, term.category)
        pw = piecewise_linearize(term.a, term.b, term.c, term.lo, term.hi, segments)
        for k, seg in enumerate(pw.segments):
            # epigraph: cost >= slope*p + intercept*u  (zero when off)
            model.add_constraint(
                f"{term.name}_seg{k}",
                {term.name: -1.0, term.p_var: seg.slope, term.u_var: seg.intercept},
                "<=", 0.0)
        del cost_var
    return model


def solve_instance(instance: Instance, backend: BackendConfig | None = None,
                   segments: int = DEFAULT_SEGMENTS,
                   workdir: str | None = None) -> tuple[MilpModel, ScheduleSolution]:
    model = assemble(instance, segments=segments)
    config = backend if backend is not None else default_backend()
    solution = run_backend(model, config, workdir=workdir)
    solution.metadata.update({
        "instance": instance.name,
        "fixed_topology": instance.options.fixed_topology,
        "segments": segments,
        "variables": len(model.variables),
        "constraints": len(model.constraints),
        "binaries": len(model.binaries()),
    })
    return model, solution
