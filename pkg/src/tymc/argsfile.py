"""Argument files for interp/run.

Line-oriented format, one block per argument:

    int 7
    real 2.5
    intarray 2 3
    1 2 3
    4 5 6
    realarray 1 2
    0.5 1.5

Blank lines and lines starting with '#' are skipped between blocks. Array
rows are given row by row; storage below is column-major to match the rest of
the pipeline. float parameters are fed from real blocks and narrowed at the
call boundary.
"""
from __future__ import annotations

from .ast_nodes import TymType
from .interp import PyArr, f32, sat


class ArgsError(ValueError):
    pass


def parse_args_file(text: str) -> list:
    lines = [ln.strip() for ln in text.splitlines()]
    pos = 0
    out = []

    def next_line():
        nonlocal pos
        while pos < len(lines) and (not lines[pos] or lines[pos].startswith("#")):
            pos += 1
        if pos >= len(lines):
            return None
        ln = lines[pos]
        pos += 1
        return ln

    while True:
        ln = next_line()
        if ln is None:
            break
        parts = ln.split()
        kind = parts[0]
        if kind == "int":
            if len(parts) != 2:
                raise ArgsError(f"malformed int block: {ln!r}")
            try:
                out.append(sat(int(parts[1])))
            except ValueError:
                raise ArgsError(f"bad int value: {parts[1]!r}") from None
        elif kind == "real":
            if len(parts) != 2:
                raise ArgsError(f"malformed real block: {ln!r}")
            try:
                out.append(float(parts[1]))
            except ValueError:
                raise ArgsError(f"bad real value: {parts[1]!r}") from None
        elif kind in ("intarray", "realarray"):
            if len(parts) != 3:
                raise ArgsError(f"malformed array header: {ln!r}")
            try:
                rows, cols = int(parts[1]), int(parts[2])
            except ValueError:
                raise ArgsError(f"bad array dimensions: {ln!r}") from None
            if rows < 0 or cols < 0:
                raise ArgsError(f"negative array dimensions: {ln!r}")
            is_int = kind == "intarray"
            data = [0 if is_int else 0.0] * (rows * cols)
            for r in range(rows):
                row_ln = next_line()
                if row_ln is None:
                    raise ArgsError(f"array block ended early: expected {rows} rows")
                cells = row_ln.split()
                if len(cells) != cols:
                    raise ArgsError(f"expected {cols} values in array row, got {len(cells)}")
                for c, cell in enumerate(cells):
                    try:
                        data[r + c * rows] = sat(int(cell)) if is_int else float(cell)
                    except ValueError:
                        raise ArgsError(f"bad array value: {cell!r}") from None
            out.append(PyArr(rows, cols, data, is_int))
        else:
            raise ArgsError(f"unknown argument kind: {kind!r}")
    return out


def serialize_args(args: list) -> str:
    """Inverse of parse_args_file, used when handing arguments to a compiled binary."""
    chunks = []
    for a in args:
        if isinstance(a, PyArr):
            kind = "intarray" if a.is_int else "realarray"
            chunks.append(f"{kind} {a.rows} {a.cols}")
            for r in range(a.rows):
                cells = []
                for c in range(a.cols):
                    v = a.data[r + c * a.rows]
                    cells.append(str(v) if a.is_int else f"{v:.17g}")
                chunks.append(" ".join(cells))
        elif isinstance(a, bool):
            raise ArgsError("bool is not an argument type")
        elif isinstance(a, int):
            chunks.append(f"int {a}")
        else:
            chunks.append(f"real {a:.17g}")
    return "\n".join(chunks) + "\n"


def coerce_args(args: list, params) -> list:
    """Check parsed arguments against parameter entries; int widens to real.

    Returns the coerced list or raises ArgsError with the canonical message a
    compiled binary prints for the same problem.
    """
    if len(args) != len(params):
        raise ArgsError("invalid number of input params")
    out = []
    for a, p in zip(args, params):
        ty = p.ty
        if ty is TymType.INT:
            if isinstance(a, PyArr) or not isinstance(a, int):
                raise ArgsError("invalid type of input parameters")
            out.append(a)
        elif ty is TymType.REAL:
            if isinstance(a, PyArr):
                raise ArgsError("invalid type of input parameters")
            out.append(float(a))
        elif ty is TymType.FLOAT:
            if isinstance(a, PyArr):
                raise ArgsError("invalid type of input parameters")
            out.append(f32(float(a)))
        elif ty is TymType.INT_ARRAY:
            if not isinstance(a, PyArr) or not a.is_int:
                raise ArgsError("invalid type of input parameters")
            out.append(a)
        else:
            if not isinstance(a, PyArr):
                raise ArgsError("invalid type of input parameters")
            if a.is_int:
                out.append(PyArr(a.rows, a.cols, [float(v) for v in a.data], False))
            else:
                out.append(a)
    return out
