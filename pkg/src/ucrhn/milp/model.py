"""Lightweight MILP container shared by all constraint builders.

The model is a plain registry of named variables, linear constraints and a
category-tagged linear objective.  Builders append to it in a fixed order so
that two assemblies of the same instance are structurally identical, which is
what makes the emitted exchange files byte-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

CONTINUOUS = "continuous"
BINARY = "binary"

SENSES = ("<=", ">=", "=")

#: Objective categories mirroring the cost-ledger columns.
CATEGORIES = ("tu", "chp", "wd", "hb", "ls")


class ModelError(Exception):
    """Raised on malformed model construction (duplicate names, bad refs)."""


@dataclass
class Variable:
    index: int
    name: str
    kind: str
    lb: float
    ub: float

    @property
    def is_fixed(self) -> bool:
        return self.lb == self.ub


@dataclass
class Constraint:
    name: str
    coeffs: list[tuple[int, float]]  # (variable index, coefficient)
    sense: str
    rhs: float


class MilpModel:
    """Variables, linear constraints and a linear objective with constant."""

    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self._var_index: dict[str, int] = {}
        self._con_names: set[str] = set()
        # objective: per-variable linear coefficient plus per-category constant
        self.objective: dict[int, float] = {}
        self.objective_category: dict[int, str] = {}
        self.objective_constants: dict[str, float] = {}

    # ------------------------------------------------------------------
    # variables
    # ------------------------------------------------------------------
    def add_variable(self, name: str, kind: str = CONTINUOUS,
                     lb: float = 0.0, ub: float = math.inf) -> int:
        if name in self._var_index:
            raise ModelError(f"duplicate variable name {name!r}")
        if kind not in (CONTINUOUS, BINARY):
            raise ModelError(f"unknown variable kind {kind!r}")
        if lb > ub:
            raise ModelError(f"variable {name!r} has lb {lb} > ub {ub}")
        idx = len(self.variables)
        self.variables.append(Variable(idx, name, kind, float(lb), float(ub)))
        self._var_index[name] = idx
        return idx

    def add_binary(self, name: str) -> int:
        return self.add_variable(name, BINARY, 0.0, 1.0)

    def index_of(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise ModelError(f"unknown variable {name!r}") from None

    def has_variable(self, name: str) -> bool:
        return name in self._var_index

    def fix_variable(self, name: str, value: float) -> None:
        v = self.variables[self.index_of(name)]
        v.lb = float(value)
        v.ub = float(value)

    def set_bounds(self, name: str, lb: float, ub: float) -> None:
        v = self.variables[self.index_of(name)]
        if lb > ub:
            raise ModelError(f"variable {name!r} has lb {lb} > ub {ub}")
        v.lb = float(lb)
        v.ub = float(ub)

    # ------------------------------------------------------------------
    # constraints
    # ------------------------------------------------------------------
    def add_constraint(self, name: str, terms: dict[str, float] | list[tuple[str, float]],
                       sense: str, rhs: float) -> None:
        if name in self._con_names:
            raise ModelError(f"duplicate constraint name {name!r}")
        if sense not in SENSES:
            raise ModelError(f"unknown constraint sense {sense!r}")
        items = terms.items() if isinstance(terms, dict) else terms
        coeffs = [(self.index_of(var), float(c)) for var, c in items if c != 0.0]
        self.constraints.append(Constraint(name, coeffs, sense, float(rhs)))
        self._con_names.add(name)

    # ------------------------------------------------------------------
    # objective
    # ------------------------------------------------------------------
    def add_objective_term(self, var: str, coeff: float, category: str) -> None:
        if category not in CATEGORIES:
            raise ModelError(f"unknown objective category {category!r}")
        idx = self.index_of(var)
        prev = self.objective_category.get(idx)
        if prev is not None and prev != category:
            raise ModelError(f"variable {var!r} already charged to {prev!r}")
        self.objective[idx] = self.objective.get(idx, 0.0) + float(coeff)
        self.objective_category[idx] = category
    def add_objective_constant(self, value: float, category: str) -> None:
        if category not in CATEGORIES:
            raise ModelError(f"unknown objective category {category!r}")
        self.objective_constants[category] = (
            self.objective_constants.get(category, 0.0) + float(value))

    @property
    def objective_constant(self) -> float:
        return sum(self.objective_constants.values())

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    def binaries(self, free_only: bool = False) -> list[Variable]:
        out = [v for v in self.variables if v.kind == BINARY]
        if free_only:
            out = [v for v in out if not v.is_fixed]
        return out

    def constraint_names(self, prefix: str | None = None) -> list[str]:
        names = [c.name for c in self.constraints]
        if prefix is not None:
            names = [n for n in names if n.startswith(prefix)]
        return names

    def evaluate_objective(self, values: dict[str, float]) -> float:
        total = self.objective_constant
        for idx, coeff in self.objective.items():
            total += coeff * values.get(self.variables[idx].name, 0.0)
        return total

    def constraint_residual(self, con: Constraint, values: dict[str, float]) -> float:
        """Signed violation of one constraint (0 when satisfied)."""
        act = sum(c * values.get(self.variables[i].name, 0.0) for i, c in con.coeffs)
        if con.sense == "<=":
            return max(0.0, act - con.rhs)
        if con.sense == ">=":
            return max(0.0, con.rhs - act)
        return abs(act - con.rhs)

    def max_violation(self, values: dict[str, float]) -> float:
        worst = 0.0
        for con in self.constraints:
            worst = max(worst, self.constraint_residual(con, values))
        for v in self.variables:
            x = values.get(v.name, 0.0)
            worst = max(worst, v.lb - x, x - v.ub)
        return worst


@dataclass
class ScheduleSolution:
    """Solved schedule: values by variable name plus the cost ledger."""

    status: str  # optimal | feasible | infeasible | error
    objective: float
    values: dict[str, float] = field(default_factory=dict)
    ledger: dict[str, float] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("optimal", "feasible")

    def value(self, name: str, default: float = 0.0) -> float:
        return self.values.get(name, default)


def extract_ledger(model: MilpModel, values: dict[str, float]) -> dict[str, float]:
    """Split the objective into the per-category cost ledger.

    Components sum to the objective exactly because each objective term is
    tagged with its category at build time.
    """
    ledger = {cat: model.objective_constants.get(cat, 0.0) for cat in CATEGORIES}
    for idx, coeff in model.objective.items():
        cat = model.objective_category[idx]
        ledger[cat] += coeff * values.get(model.variables[idx].name, 0.0)
    ledger["total"] = sum(ledger[cat] for cat in CATEGORIES)
    return ledger
