"""Dense bounded-variable primal simplex with Bland's rule.

This solver exists to power the exhaustive-enumeration backend and the test
suite on tiny models; it is deliberately simple (dense factorizations each
iteration) and deterministic.  Variables carry individual lower/upper bounds,
rows may be <=, >= or =.  Phase 1 drives artificial variables to zero, phase 2
optimizes the true cost.  Bland's smallest-index rule is used for both the
entering and leaving choices, which guarantees termination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_AT_LB = 0
_AT_UB = 1
_FREE = 2

_TOL = 1e-9


@dataclass
class LpResult:
    status: str  # optimal | infeasible | unbounded
    x: np.ndarray | None
    objective: float | None


def solve_lp(c, A, senses, b, lb, ub, max_iter: int | None = None) -> LpResult:
    """Minimize c @ x subject to A x (senses) b and lb <= x <= ub."""
    c = np.asarray(c, dtype=float)
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    n = c.size
    A = np.asarray(A, dtype=float).reshape(len(senses), n) if len(senses) else np.zeros((0, n))
    b = np.asarray(b, dtype=float)
    m = A.shape[0]

    if np.any(lb > ub + _TOL):
        return LpResult("infeasible", None, None)

    if m == 0:
        x = np.where(c > 0, lb, np.where(c < 0, ub, np.where(np.isfinite(lb), lb, 0.0)))
        if np.any(~np.isfinite(x)):
            return LpResult("unbounded", None, None)
        return LpResult("optimal", x, float(c @ x))

    # slacks turn every row into an equality
    slack_cols = []
    slack_lb, slack_ub = [], []
    for i, s in enumerate(senses):
        if s == "=":
            continue
        col = np.zeros(m)
        col[i] = 1.0
        slack_cols.append(col)
        if s == "<=":
            slack_lb.append(0.0)
            slack_ub.append(math.inf)
        elif s == ">=":
            slack_lb.append(-math.inf)
            slack_ub.append(0.0)
        else:
            raise ValueError(f"unknown sense {s!r}")
    n_slack = len(slack_cols)

    Afull = np.hstack([A, np.array(slack_cols).T]) if n_slack else A.copy()
    lbf = np.concatenate([lb, slack_lb]) if n_slack else lb.copy()
    ubf = np.concatenate([ub, slack_ub]) if n_slack else ub.copy()

    # start every structural/slack column at its nearest finite bound
    x = np.zeros(n + n_slack)
    state = np.empty(n + n_slack, dtype=int)
    for j in range(n + n_slack):
        if np.isfinite(lbf[j]):
            x[j], state[j] = lbf[j], _AT_LB
        elif np.isfinite(ubf[j]):
            x[j], state[j] = ubf[j], _AT_UB
        else:
            x[j], state[j] = 0.0, _FREE

    resid = b - Afull @ x
    signs = np.where(resid >= 0, 1.0, -1.0)
    Aart = np.hstack([Afull, np.diag(signs)])
    lba = np.concatenate([lbf, np.zeros(m)])
    uba = np.concatenate([ubf, np.full(m, math.inf)])
    xa = np.concatenate([x, np.abs(resid)])
    statea = np.concatenate([state, np.full(m, _AT_LB, dtype=int)])
    basis = list(range(n + n_slack, n + n_slack + m))

    total = n + n_slack + m
    if max_iter is None:
        max_iter = 2000 + 60 * total

    phase1_cost = np.zeros(total)
    phase1_cost[n + n_slack:] = 1.0
    status = _iterate(Aart, phase1_cost, basis, statea, xa, lba, uba, max_iter)
    if status == "unbounded":  # cannot happen in phase 1, defensive
        return LpResult("infeasible", None, None)
    if float(phase1_cost @ xa) > 1e-7:
        return LpResult("infeasible", None, None)

    # artificials are pinned at zero for phase 2
    lba[n + n_slack:] = 0.0
    uba[n + n_slack:] = 0.0
    xa[n + n_slack:] = np.where(np.abs(xa[n + n_slack:]) < 1e-9, 0.0, xa[n + n_slack:])

    phase2_cost = np.zeros(total)
    phase2_cost[:n] = c
    status = _iterate(Aart, phase2_cost, basis, statea, xa, lba, uba, max_iter)
    if status == "unbounded":
        return LpResult("unbounded", None, None)
    xs = xa[:n].copy()
    return LpResult("optimal", xs, float(c @ xs))


def _iterate(A, c, basis, state, x, lb, ub, max_iter: int) -> str:
    m, total = A.shape
    in_basis = np.zeros(total, dtype=bool)
    in_basis[basis] = True

    for _ in range(max_iter):
        B = A[:, basis]
        try:
            y = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError:
            raise RuntimeError("singular basis in simplex")

        entering = -1
        direction = 0.0
        for j in range(total):  # Bland: lowest index first
            if in_basis[j] or lb[j] == ub[j]:
                continue
            d = c[j] - float(y @ A[:, j])
            if state[j] == _AT_LB and d < -_TOL:
                entering, direction = j, 1.0
                break
            if state[j] == _AT_UB and d > _TOL:
                entering, direction = j, -1.0
                break
            if state[j] == _FREE and abs(d) > _TOL:
                entering, direction = j, (1.0 if d < 0 else -1.0)
                break
        if entering < 0:
            return "optimal"

        w = np.linalg.solve(B, A[:, entering])

        # step length capped by the entering variable's own range ...
        own_cap = ub[entering] - lb[entering]
        t_best = own_cap if np.isfinite(own_cap) else math.inf
        leave_pos = -1
        leave_to = _AT_LB
        for pos in range(m):
            bi = basis[pos]
            delta = -direction * w[pos]
            if delta > _TOL:
                cap = (ub[bi] - x[bi]) / delta if np.isfinite(ub[bi]) else math.inf
                to = _AT_UB
            elif delta < -_TOL:
                cap = (lb[bi] - x[bi]) / delta if np.isfinite(lb[bi]) else math.inf
                to = _AT_LB
            else:
                continue
            cap = max(cap, 0.0)
            # ... and by the first basic variable to hit a bound; ties break
            # toward the smallest variable index (Bland)
            if cap < t_best - _TOL or (cap < t_best + _TOL and
                                       (leave_pos < 0 or bi < basis[leave_pos])):
                if cap < t_best + _TOL:
                    t_best = min(t_best, cap)
                    leave_pos = pos
                    leave_to = to

        if math.isinf(t_best):
            return "unbounded"

        t = t_best
        x[entering] += direction * t
        for pos in range(m):
            x[basis[pos]] -= direction * t * w[pos]

        if leave_pos < 0:
            state[entering] = _AT_UB if state[entering] == _AT_LB else _AT_LB
        else:
            leaving = basis[leave_pos]
            x[leaving] = ub[leaving] if leave_to == _AT_UB else lb[leaving]
            basis[leave_pos] = entering
            in_basis[entering] = True
            in_basis[leaving] = False
            state[leaving] = leave_to

    raise RuntimeError("simplex iteration limit exceeded")
