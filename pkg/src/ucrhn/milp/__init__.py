from .assemble import DEFAULT_SEGMENTS, assemble, solve_instance
from .backend import (BackendConfig, BackendError, ENUMERATE_BINARY_CAP,
                      ENV_SOLVER_CMD, bundled_backend, default_backend,
                      resolve_backend, run_backend)
from .linearize import PiecewiseCost, Segment, max_overestimation, piecewise_linearize
from .model import (BINARY, CATEGORIES, CONTINUOUS, Constraint, MilpModel,
                    ModelError, ScheduleSolution, Variable, extract_ledger)
from .mps import (MpsParseError, emit_exchange_file, emit_exchange_str,
                  parse_exchange_file, parse_exchange_str)
from .simplex import LpResult, solve_lp

__all__ = [
    "DEFAULT_SEGMENTS", "assemble", "solve_instance",
    "BackendConfig", "BackendError", "ENUMERATE_BINARY_CAP", "ENV_SOLVER_CMD",
    "bundled_backend", "default_backend", "resolve_backend", "run_backend",
    "PiecewiseCost", "Segment", "max_overestimation", "piecewise_linearize",
    "BINARY", "CATEGORIES", "CONTINUOUS", "Constraint", "MilpModel",
    "ModelError", "ScheduleSolution", "Variable", "extract_ledger",
    "MpsParseError", "emit_exchange_file", "emit_exchange_str",
    "parse_exchange_file", "parse_exchange_str",
    "LpResult", "solve_lp",
]
