"""CHP operating-region arithmetic and the heating-boiler model.

A CHP unit's feasible (power, heat) set is the convex hull of its extreme
points; dispatches are convex-combination weights over those points.  Boilers
convert fuel to heat with a fixed efficiency up to a capacity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import ChpOperatingRegion, ChpUnit, HeatingBoiler, Instance

WEIGHT_SUM_TOL = 1e-9
POINT_TOL = 1e-6


class DispatchError(Exception):
    pass


@dataclass(frozen=True)
class ChpDispatch:
    """Weights over extreme points with the implied (p, h) operating point."""
    alphas: tuple[float, ...]
    p: float
    h: float


def chp_point_from_alphas(region: ChpOperatingRegion, alphas) -> tuple[float, float]:
    """Operating point implied by convex-combination weights."""
    alphas = tuple(float(a) for a in alphas)
    if len(alphas) != len(region.extreme_points):
        raise DispatchError(
            f"{len(alphas)} weights for {len(region.extreme_points)} extreme points")
    if any(a < -WEIGHT_SUM_TOL or a > 1 + WEIGHT_SUM_TOL for a in alphas):
        raise DispatchError("weights must lie in [0, 1]")
    total = sum(alphas)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise DispatchError(f"weights sum to {total}, expected 1")
    p = sum(a * pt[0] for a, pt in zip(alphas, region.extreme_points))
    h = sum(a * pt[1] for a, pt in zip(alphas, region.extreme_points))
    return p, h


def alphas_for_point(region: ChpOperatingRegion, p: float,
                     h: float) -> tuple[float, ...] | None:
    """Some valid weight vector reproducing (p, h), or None if outside.

    Uses the fan triangulation anchored at vertex 0: triangles
    (0, k, k+1) are scanned in order and the first one containing the point
    supplies barycentric weights.
    """
    pts = region.extreme_points
    n = len(pts)
    for k in range(1, n - 1):
        bary = _barycentric(pts[0], pts[k], pts[k + 1], (p, h))
        if bary is None:
            continue
        w0, w1, w2 = bary
        if min(w0, w1, w2) >= -POINT_TOL:
            alphas = [0.0] * n
            alphas[0] += max(w0, 0.0)
            alphas[k] += max(w1, 0.0)
            alphas[k + 1] += max(w2, 0.0)
            total = sum(alphas)
            return tuple(a / total for a in alphas)
    return None


def _barycentric(a, b, c, pt):
    det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])
    if abs(det) < 1e-12:
        return None  # degenerate triangle in the fan
    l1 = ((pt[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (pt[1] - a[1])) / det
    l2 = ((b[0] - a[0]) * (pt[1] - a[1]) - (pt[0] - a[0]) * (b[1] - a[1])) / det
    return 1.0 - l1 - l2, l1, l2


def boiler_heat(boiler: HeatingBoiler, fuel: float) -> float:
    """Heat produced from a fuel quantity; errors above the boiler capacity."""
    if fuel < 0:
        raise DispatchError(f"negative fuel input {fuel}")
    heat = boiler.efficiency * fuel
    if heat > boiler.h_max + 1e-9:
        raise DispatchError(
            f"boiler {boiler.id} over capacity: {heat} > {boiler.h_max} MWth")
    return heat


def chp_commitment_link(h: float, on: bool, region: ChpOperatingRegion) -> float:
    """Violation of the heat/commitment coupling (0 when satisfied).

    Off units must produce no heat; online units must stay inside the heat
    span of the operating region.
    """
    if not on:
        return abs(h)
    h_lo, h_hi = region.h_bounds()
    return max(0.0, h_lo - h, h - h_hi)


# ---------------------------------------------------------------------------
# MILP block: convex-combination coupling per CHP unit and period
# ---------------------------------------------------------------------------

def declare_variables(instance: Instance, model) -> None:
    for unit in instance.chp_units:
        for t in instance.periods:
            for k in range(len(unit.region.extreme_points)):
                model.add_variable(f"alpha_{unit.id}_k{k}_t{t}", lb=0.0, ub=1.0)
            h_lo, h_hi = unit.region.h_bounds()
            model.add_variable(f"hchp_{unit.id}_t{t}", lb=0.0, ub=max(h_hi, 0.0))
    for boiler in instance.boilers:
        for t in instance.periods:
            model.add_variable(f"hhb_{boiler.id}_t{t}", lb=0.0, ub=boiler.h_max)


def build_chp_constraints(instance: Instance, model) -> None:
    """Couples weights to commitment and to the (p, h) dispatch variables."""
    for unit in instance.chp_units:
        pts = unit.region.extreme_points
        for t in instance.periods:
            names = [f"alpha_{unit.id}_k{k}_t{t}" for k in range(len(pts))]
            # weights activate with the unit: sum(alpha) = u
            terms = {name: 1.0 for name in names}
            terms[f"u_{unit.id}_t{t}"] = -1.0
            model.add_constraint(f"chp_alpha_{unit.id}_t{t}", terms, "=", 0.0)
            # p and h are the weighted extreme-point coordinates
            terms_p = {name: pts[k][0] for k, name in enumerate(names)}
            terms_p[f"p_{unit.id}_t{t}"] = -1.0
            model.add_constraint(f"chp_power_{unit.id}_t{t}", terms_p, "=", 0.0)
            terms_h = {name: pts[k][1] for k, name in enumerate(names)}
            terms_h[f"hchp_{unit.id}_t{t}"] = -1.0
            model.add_constraint(f"chp_heat_{unit.id}_t{t}", terms_h, "=", 0.0)


def chp_interpolated_cost_terms(unit: ChpUnit, t: int) -> dict[str, float]:
    """Objective coefficients of the vertex-interpolated cost mode."""
    return {f"alpha_{unit.id}_k{k}_t{t}": cost
            for k, cost in enumerate(unit.region.cost_at_points)}
