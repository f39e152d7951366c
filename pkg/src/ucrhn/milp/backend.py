"""Solver backends: external command templates and exhaustive enumeration.

External backends are plain subprocesses: the model is written as an MPS file,
the command template is expanded with ``{mps}``/``{sol}``/``{gap}`` and run,
and the solution file is parsed in one of two dialects ("pairs" or "columns",
see docs/backends.md).  The "enumerate" backend fixes every free binary in
turn and solves each continuous relaxation with the built-in simplex; it is
capped at 20 free binaries and exists as an independent optimality oracle.
"""

from __future__ import annotations

import math
import os
import shlex
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import mps
from .model import BINARY, MilpModel, ScheduleSolution, extract_ledger
from .simplex import solve_lp

ENV_SOLVER_CMD = "UCRHN_SOLVER_CMD"
ENUMERATE_BINARY_CAP = 20
DEFAULT_GAP = 1e-4


class BackendError(Exception):
    pass


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # "command" | "enumerate"
    template: str = ""
    dialect: str = "pairs"
    gap: float = DEFAULT_GAP

    @staticmethod
    def enumerate_backend() -> "BackendConfig":
        return BackendConfig(kind="enumerate")

    @staticmethod
    def command(template: str, dialect: str = "pairs", gap: float = DEFAULT_GAP) -> "BackendConfig":
        return BackendConfig(kind="command", template=template, dialect=dialect, gap=gap)


def default_backend(gap: float = DEFAULT_GAP) -> BackendConfig:
    """Environment override, else the bundled scipy/HiGHS shim."""
    cmd = os.environ.get(ENV_SOLVER_CMD)
    if cmd:
        return BackendConfig.command(cmd, gap=gap)
    return bundled_backend(gap)


def bundled_backend(gap: float = DEFAULT_GAP) -> BackendConfig:
    shim = f"{shlex.quote(sys.executable)} -m ucrhn.hsolve {{mps}} {{sol}} --gap {{gap}}"
    return BackendConfig.command(shim, gap=gap)


def resolve_backend(spec: str | None, gap: float = DEFAULT_GAP,
                    dialect: str = "pairs") -> BackendConfig:
    if spec is None or spec == "":
        return default_backend(gap)
    if spec == "enumerate":
        return BackendConfig.enumerate_backend()
    return BackendConfig.command(spec, dialect=dialect, gap=gap)


# ---------------------------------------------------------------------------
# solution-file dialects
# ---------------------------------------------------------------------------

def parse_solution_pairs(text: str) -> tuple[str | None, float | None, dict[str, float]]:
    """Generic dialect: optional ``status``/``objective`` headers then
    one ``name value`` pair per line.  '#' starts a comment."""
    status = None
    objective = None
    values: dict[str, float] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0].lower()
        if key == "status" and len(parts) >= 2:
            status = parts[1].lower()
        elif key == "objective" and len(parts) >= 2:
            objective = float(parts[1])
        elif len(parts) >= 2:
            values[parts[0]] = float(parts[1])
    return status, objective, values


def parse_solution_columns(text: str) -> tuple[str | None, float | None, dict[str, float]]:
    """Columnar dialect: rows of ``index name activity [...]``; header lines
    without a numeric activity are skipped."""
    status = None
    objective = None
    values: dict[str, float] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("status"):
            parts = line.split()
            if len(parts) >= 2:
                status = parts[1].lower()
            continue
        if low.startswith("objective"):
            parts = line.split()
            try:
                objective = float(parts[-1])
            except ValueError:
                pass
            continue
        parts = line.split()
        if len(parts) < 3:
            continue
        try:
            int(parts[0])
            value = float(parts[2])
        except ValueError:
            continue
        values[parts[1]] = value
    return status, objective, values


_DIALECTS = {
    "pairs": parse_solution_pairs,
    "columns": parse_solution_columns,
}


def write_solution_pairs(path, status: str, objective: float | None,
                         values: dict[str, float]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"status {status}\n")
        if objective is not None:
            fh.write(f"objective {objective!r}\n")
        for name, value in values.items():
            fh.write(f"{name} {value!r}\n")


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------

def run_backend(model: MilpModel, config: BackendConfig,
                workdir: str | None = None) -> ScheduleSolution:
    if config.kind == "enumerate":
        return _run_enumerate(model)
    if config.kind == "command":
        return _run_command(model, config, workdir)
    raise BackendError(f"unknown backend kind {config.kind!r}")


def _run_command(model: MilpModel, config: BackendConfig,
                 workdir: str | None) -> ScheduleSolution:
    if config.dialect not in _DIALECTS:
        raise BackendError(f"unknown solution dialect {config.dialect!r}")
    created = None
    if workdir is None:
        created = tempfile.TemporaryDirectory(prefix="ucrhn-")
        workdir = created.name
    try:
        mps_path = os.path.join(workdir, "model.mps")
        sol_path = os.path.join(workdir, "model.sol")
        mps.emit_exchange_file(model, mps_path)
        cmd = config.template.format(mps=shlex.quote(mps_path),
                                     sol=shlex.quote(sol_path),
                                     gap=config.gap)
        t0 = time.monotonic()
        proc = subprocess.run(cmd, shell=True, capture_output=True, text=True)
        wall = time.monotonic() - t0
        if proc.returncode != 0:
            raise BackendError(
                f"solver command failed (exit {proc.returncode}): {cmd}\n"
                f"stdout: {proc.stdout[-2000:]}\nstderr: {proc.stderr[-2000:]}")
        if not os.path.exists(sol_path):
            raise BackendError(f"solver produced no solution file at {sol_path}")
        with open(sol_path, "r", encoding="utf-8") as fh:
            text = fh.read()
        try:
            status, reported_obj, values = _DIALECTS[config.dialect](text)
        except Exception as exc:
            raise BackendError(f"unparsable solution file {sol_path}: {exc}") from exc

        if status is None:
            status = "feasible" if values else "error"
        status = _normalize_status(status)
        if status == "infeasible":
            return ScheduleSolution("infeasible", math.nan, {}, {},
                                    {"backend": "command", "wall_time": wall,
                                     "gap": config.gap})
        unknown = [n for n in values if not model.has_variable(n)]
        if unknown:
            raise BackendError(f"solution names unknown to the model: {unknown[:5]}")
        # variables omitted by the solver are at zero (common convention)
        full = {v.name: values.get(v.name, 0.0) for v in model.variables}
        objective = model.evaluate_objective(full)
        if reported_obj is not None and abs(reported_obj - objective) > 1e-4 * max(1.0, abs(objective)):
            raise BackendError(
                f"solver-reported objective {reported_obj} disagrees with "
                f"recomputed {objective}")
        return ScheduleSolution(status, objective, full,
                                extract_ledger(model, full),
                                {"backend": "command", "wall_time": wall,
                                 "gap": config.gap})
    finally:
        if created is not None:
            created.cleanup()


def _normalize_status(raw: str) -> str:
    s = raw.lower()
    if "optimal" in s:
        return "optimal"
    if "infeasible" in s:
        return "infeasible"
    if "feasible" in s or "suboptimal" in s:
        return "feasible"
    return "error"


def _run_enumerate(model: MilpModel) -> ScheduleSolution:
    free = [v for v in model.binaries(free_only=True)]
    if len(free) > ENUMERATE_BINARY_CAP:
        raise BackendError(
            f"enumeration refused: {len(free)} free binaries exceeds the "
            f"cap of {ENUMERATE_BINARY_CAP}")
    t0 = time.monotonic()

    fixed_binary = {v.index: v.lb for v in model.binaries() if v.is_fixed}
    free_idx = [v.index for v in free]
    cont = [v for v in model.variables if v.kind != BINARY]
    cont_pos = {v.index: k for k, v in enumerate(cont)}

    # constraints whose support is purely binary can be checked directly
    pure_binary, mixed = [], []
    binary_set = set(free_idx) | set(fixed_binary)
    for con in model.constraints:
        (pure_binary if all(i in binary_set for i, _ in con.coeffs) else mixed).append(con)

    n = len(cont)
    lb = np.array([v.lb for v in cont])
    ub = np.array([v.ub for v in cont])
    c = np.zeros(n)
    bin_cost: dict[int, float] = {}
    for idx, coeff in model.objective.items():
        if idx in cont_pos:
            c[cont_pos[idx]] = coeff
        else:
            bin_cost[idx] = coeff

    A = np.zeros((len(mixed), n))
    senses = [con.sense for con in mixed]
    base_rhs = np.zeros(len(mixed))
    bin_terms: list[list[tuple[int, float]]] = []
    for r, con in enumerate(mixed):
        base_rhs[r] = con.rhs
        bterms = []
        for idx, coeff in con.coeffs:
            if idx in cont_pos:
                A[r, cont_pos[idx]] = coeff
            else:
                bterms.append((idx, coeff))
        bin_terms.append(bterms)

    best_obj = math.inf
    best_values: dict[str, float] | None = None
    explored = 0
    for assignment in product((0.0, 1.0), repeat=len(free_idx)):
        fixing = dict(fixed_binary)
        fixing.update(zip(free_idx, assignment))
        ok = True
        for con in pure_binary:
            act = sum(coeff * fixing[i] for i, coeff in con.coeffs)
            if ((con.sense == "<=" and act > con.rhs + 1e-9)
                    or (con.sense == ">=" and act < con.rhs - 1e-9)
                    or (con.sense == "=" and abs(act - con.rhs) > 1e-9)):
                ok = False
                break
        if not ok:
            continue
        explored += 1
        rhs = base_rhs - np.array(
            [sum(coeff * fixing[i] for i, coeff in terms) for terms in bin_terms])
        res = solve_lp(c, A, senses, rhs, lb, ub)
        if res.status == "unbounded":
            raise BackendError("relaxation unbounded during enumeration")
        if res.status != "optimal":
            continue
        obj = res.objective + sum(bin_cost.get(i, 0.0) * v for i, v in fixing.items())
        if obj < best_obj - 1e-12:
            best_obj = obj
            best_values = {v.name: float(res.x[k]) for k, v in enumerate(cont)}
            best_values.update({model.variables[i].name: v for i, v in fixing.items()})

    wall = time.monotonic() - t0
    meta = {"backend": "enumerate", "wall_time": wall, "gap": 0.0,
            "assignments_solved": explored}
    if best_values is None:
        return ScheduleSolution("infeasible", math.nan, {}, {}, meta)
    objective = best_obj + model.objective_constant
    return ScheduleSolution("optimal", objective, best_values,
                            extract_ledger(model, best_values), meta)
