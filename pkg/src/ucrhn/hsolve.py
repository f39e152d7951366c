"""Bundled MILP solver shim: reads an MPS file, solves with scipy's HiGHS
interface, writes a "pairs"-dialect solution file.

Run as ``python -m ucrhn.hsolve model.mps model.sol --gap 1e-4``.  This is the
default external backend; any other solver can be substituted through the
command template / UCRHN_SOLVER_CMD.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .milp import mps
from .milp.backend import write_solution_pairs
from .milp.model import BINARY


def solve_mps(mps_path: str, gap: float, time_limit: float | None = None):
    model = mps.parse_exchange_file(mps_path)
    n = len(model.variables)
    c = np.zeros(n)
    for idx, coeff in model.objective.items():
        c[idx] = coeff
    integrality = np.array([1 if v.kind == BINARY else 0 for v in model.variables])
    lb = np.array([v.lb for v in model.variables])
    ub = np.array([v.ub for v in model.variables])

    m = len(model.constraints)
    A = np.zeros((m, n))
    lo = np.full(m, -np.inf)
    hi = np.full(m, np.inf)
    for r, con in enumerate(model.constraints):
        for idx, coeff in con.coeffs:
            A[r, idx] = coeff
        if con.sense == "<=":
            hi[r] = con.rhs
        elif con.sense == ">=":
            lo[r] = con.rhs
        else:
            lo[r] = hi[r] = con.rhs

    options = {"mip_rel_gap": gap, "presolve": True}
    if time_limit is not None:
        options["time_limit"] = time_limit
    constraints = LinearConstraint(A, lo, hi) if m else None
    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lb, ub), options=options)
    return model, res


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ucrhn.hsolve",
                                     description="MPS-to-solution MILP shim (HiGHS)")
    parser.add_argument("mps")
    parser.add_argument("sol")
    parser.add_argument("--gap", type=float, default=1e-4)
    parser.add_argument("--time-limit", type=float, default=None)
    args = parser.parse_args(argv)

    model, res = solve_mps(args.mps, args.gap, args.time_limit)
    if res.status == 0:
        status = "optimal"
    elif res.status == 2:
        status = "infeasible"
    elif res.x is not None:
        status = "feasible"
    else:
        status = "error"

    if res.x is None:
        write_solution_pairs(args.sol, status, None, {})
        return 0 if status == "infeasible" else 3

    values = {}
    for var, x in zip(model.variables, res.x):
        v = float(x)
        if var.kind == BINARY:
            v = float(round(v))
        if v != 0.0:
            values[var.name] = v
    objective = float(res.fun) + model.objective_constant if res.fun is not None else math.nan
    write_solution_pairs(args.sol, status, objective, values)
    return 0


if __name__ == "__main__":
    sys.exit(main())
