"""MPS exchange-file writer and parser.

Emits the classic sectioned layout (ROWS / COLUMNS / RHS / RANGES / BOUNDS)
with whitespace-separated fields, binary columns wrapped in INTORG/INTEND
markers, and an RHS entry on the objective row carrying the negated objective
constant (the convention most solvers honour).  Output is a pure function of
the model, so identical models emit byte-identical files.

Numbers are written with ``repr``: the shortest decimal that round-trips to
the same float, which keeps emit -> parse -> emit byte-stable.
"""

from __future__ import annotations

import math

from .model import BINARY, CONTINUOUS, MilpModel, ModelError

OBJECTIVE_ROW = "COST"
MAX_NAME = 255

_SENSE_TO_ROW = {"<=": "L", ">=": "G", "=": "E"}
_ROW_TO_SENSE = {v: k for k, v in _SENSE_TO_ROW.items()}


def _check_name(name: str) -> str:
    if not name or len(name) > MAX_NAME or any(ch.isspace() for ch in name):
        raise ModelError(f"unencodable MPS name {name!r}")
    return name


def _num(value: float) -> str:
    if value == math.inf or value == -math.inf:
        raise ModelError("infinite coefficient cannot be encoded")
    if value == int(value) and abs(value) < 1e15:
        return repr(int(value))
    return repr(value)


def emit_exchange_str(model: MilpModel) -> str:
    lines = [f"NAME          {_check_name(model.name)}"]

    lines.append("ROWS")
    lines.append(f" N  {OBJECTIVE_ROW}")
    for con in model.constraints:
        lines.append(f" {_SENSE_TO_ROW[con.sense]}  {_check_name(con.name)}")

    # column-major coefficient table
    by_var: dict[int, list[tuple[str, float]]] = {v.index: [] for v in model.variables}
    for con in model.constraints:
        for idx, coeff in con.coeffs:
            by_var[idx].append((con.name, coeff))
    for idx, coeff in model.objective.items():
        if coeff != 0.0:
            by_var[idx].append((OBJECTIVE_ROW, coeff))

    lines.append("COLUMNS")
    in_int = False
    marker = 0
    for var in model.variables:
        _check_name(var.name)
        if var.kind == BINARY and not in_int:
            lines.append(f"    MARKER{marker:04d}  'MARKER'  'INTORG'")
            marker += 1
            in_int = True
        elif var.kind == CONTINUOUS and in_int:
            lines.append(f"    MARKER{marker:04d}  'MARKER'  'INTEND'")
            marker += 1
            in_int = False
        entries = by_var[var.index]
        if not entries:
            # keep empty columns visible so the parser recovers every variable
            entries = [(OBJECTIVE_ROW, 0.0)]
        for row, coeff in entries:
            lines.append(f"    {var.name}  {row}  {_num(coeff)}")
    if in_int:
        lines.append(f"    MARKER{marker:04d}  'MARKER'  'INTEND'")

    lines.append("RHS")
    if model.objective_constant != 0.0:
        lines.append(f"    RHS  {OBJECTIVE_ROW}  {_num(-model.objective_constant)}")
    for con in model.constraints:
        if con.rhs != 0.0:
            lines.append(f"    RHS  {con.name}  {_num(con.rhs)}")

    lines.append("BOUNDS")
    for var in model.variables:
        if var.kind == BINARY:
            if (var.lb, var.ub) == (0.0, 1.0):
                lines.append(f" BV BND  {var.name}")
            else:  # binary pinned by preprocessing
                lines.append(f" LO BND  {var.name}  {_num(var.lb)}")
                lines.append(f" UP BND  {var.name}  {_num(var.ub)}")
            continue
        lb, ub = var.lb, var.ub
        if lb == 0.0 and ub == math.inf:
            continue
        if lb == -math.inf and ub == math.inf:
            lines.append(f" FR BND  {var.name}")
            continue
        if lb == ub:
            lines.append(f" FX BND  {var.name}  {_num(lb)}")
            continue
        if lb == -math.inf:
            lines.append(f" MI BND  {var.name}")
        elif lb != 0.0:
            lines.append(f" LO BND  {var.name}  {_num(lb)}")
        if ub != math.inf:
            lines.append(f" UP BND  {var.name}  {_num(ub)}")

    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def emit_exchange_file(model: MilpModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_exchange_str(model))


class MpsParseError(Exception):
    pass


def parse_exchange_str(text: str) -> MilpModel:
    """Rebuild a model from MPS text (sections as emitted plus RANGES)."""
    model = MilpModel()
    senses: dict[str, str] = {}
    row_order: list[str] = []
    columns: dict[str, list[tuple[str, float]]] = {}
    col_kind: dict[str, str] = {}
    col_order: list[str] = []
    rhs: dict[str, float] = {}
    ranges: dict[str, float] = {}
    bounds: list[tuple[str, str, float]] = []
    obj_row: str | None = None

    section = None
    in_int = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("*"):
            continue
        if not raw[0].isspace():
            parts = line.split()
            section = parts[0].upper()
            if section == "NAME":
                model.name = parts[1] if len(parts) > 1 else "model"
            if section == "ENDATA":
                break
            continue
        fields = line.split()
        try:
            if section == "ROWS":
                kind, name = fields[0].upper(), fields[1]
                if kind == "N":
                    if obj_row is None:
                        obj_row = name
                    continue
                if kind not in _ROW_TO_SENSE:
                    raise MpsParseError(f"line {lineno}: unknown row type {kind!r}")
                senses[name] = _ROW_TO_SENSE[kind]
                row_order.append(name)
            elif section == "COLUMNS":
                if len(fields) >= 3 and fields[1].strip("'").upper() == "MARKER":
                    tag = fields[2].strip("'").upper()
                    in_int = tag == "INTORG"
                    continue
                name = fields[0]
                if name not in columns:
                    columns[name] = []
                    col_order.append(name)
                    col_kind[name] = BINARY if in_int else CONTINUOUS
                for row, val in zip(fields[1::2], fields[2::2]):
                    columns[name].append((row, float(val)))
            elif section == "RHS":
                for row, val in zip(fields[1::2], fields[2::2]):
                    rhs[row] = float(val)
            elif section == "RANGES":
                for row, val in zip(fields[1::2], fields[2::2]):
                    ranges[row] = float(val)
            elif section == "BOUNDS":
                btype = fields[0].upper()
                name = fields[2]
                val = float(fields[3]) if len(fields) > 3 else 0.0
                bounds.append((btype, name, val))
            else:
                raise MpsParseError(f"line {lineno}: data outside a known section")
        except (IndexError, ValueError) as exc:
            raise MpsParseError(f"line {lineno}: {raw!r}: {exc}") from exc

    if obj_row is None:
        raise MpsParseError("no objective (N) row found")

    for name in col_order:
        kind = col_kind[name]
        if kind == BINARY:
            model.add_variable(name, BINARY, 0.0, 1.0)
        else:
            model.add_variable(name, CONTINUOUS, 0.0, math.inf)

    obj_coeffs: dict[str, float] = {}
    row_terms: dict[str, list[tuple[str, float]]] = {r: [] for r in row_order}
    for name in col_order:
        for row, val in columns[name]:
            if row == obj_row:
                obj_coeffs[name] = obj_coeffs.get(name, 0.0) + val
            elif row in row_terms:
                row_terms[row].append((name, val))
            else:
                raise MpsParseError(f"coefficient references unknown row {row!r}")

    for row in row_order:
        sense = senses[row]
        b = rhs.get(row, 0.0)
        if row in ranges:
            # range row expands to the standard two-sided interval
            r = ranges[row]
            if sense == "<=":
                lo, hi = b - abs(r), b
            elif sense == ">=":
                lo, hi = b, b + abs(r)
            else:
                lo, hi = (b, b + r) if r >= 0 else (b + r, b)
            model.add_constraint(row + ".lo", row_terms[row], ">=", lo)
            model.add_constraint(row, row_terms[row], "<=", hi)
        else:
            model.add_constraint(row, row_terms[row], sense, b)

    for name, coeff in obj_coeffs.items():
        if coeff != 0.0:
            model.objective[model.index_of(name)] = coeff
            model.objective_category[model.index_of(name)] = "tu"
    if obj_row in rhs:
        model.objective_constants["tu"] = -rhs[obj_row]

    for btype, name, val in bounds:
        var = model.variables[model.index_of(name)]
        if btype == "BV":
            var.kind = BINARY
            var.lb, var.ub = 0.0, 1.0
        elif btype == "UP":
            var.ub = val
            if val < 0 and var.lb == 0.0:
                var.lb = -math.inf
        elif btype == "LO":
            var.lb = val
        elif btype == "FX":
            var.lb = var.ub = val
        elif btype == "FR":
            var.lb, var.ub = -math.inf, math.inf
        elif btype == "MI":
            var.lb = -math.inf
        elif btype == "PL":
            var.ub = math.inf
        elif btype in ("UI", "LI"):
            if btype == "UI":
                var.ub = val
            else:
                var.lb = val
        else:
            raise MpsParseError(f"unsupported bound type {btype!r}")

    return model


def parse_exchange_file(path) -> MilpModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_exchange_str(fh.read())
