"""Reference interpreter.

Statements compile to Python closures over a flat slot environment, so corpus
programs stay cheap to re-run and the benchmark variant is not hopeless. The
semantics contract shared with compiled standalone code:

  * int arithmetic is computed wide and saturated to int32 at every store
    (variable assignment, element store, loop-variable update);
  * real -> int stores truncate toward zero, map NaN to 0, clamp infinities;
  * float ops round to 32-bit after every operation;
  * element accesses are always bounds-checked here; under no_check_ranges an
    out-of-bounds access is reported as UndefinedBehavior because the compiled
    program promises nothing there;
  * slices are bounds-checked under every directive combination;
  * assigning a whole array to an already-defined array places the source into
    the top-left corner of the destination; the first assignment rebinds.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Callable, Optional

from .ast_nodes import (
    Apply,
    Assign,
    BinOp,
    ColonArg,
    DirectiveStmt,
    Expr,
    ExprStmt,
    For,
    If,
    IndexedAssign,
    IntLit,
    RealLit,
    ScalarArg,
    SliceArg,
    TymType,
    UnaryOp,
    Var,
    VarDecl,
)
from .sema import INT_MAX, INT_MIN, TypedProgram, literal_int


class _Undef:
    __slots__ = ()

    def __repr__(self):
        return "<undef>"


UNDEF = _Undef()


class Fault(Exception):
    """Deterministic runtime failure (distinct from the error() builtin)."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class ErrorReturn(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


def sat(v: int) -> int:
    if v > INT_MAX:
        return INT_MAX
    if v < INT_MIN:
        return INT_MIN
    return v


def real_to_int(x: float) -> int:
    if math.isnan(x):
        return 0
    if x >= 2147483648.0:
        return INT_MAX
    if x <= -2147483649.0:
        return INT_MIN
    return sat(math.trunc(x))


def int_div(a: int, b: int) -> int:
    if b == 0:
        raise Fault("DivisionByZero", "division by zero")
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def fdiv(a: float, b: float) -> float:
    # IEEE division; Python raises on /0.0 so spell it out
    if b == 0.0:
        if a == 0.0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


def f32(x: float) -> float:
    return struct.unpack("<f", struct.pack("<f", x))[0]


class PyArr:
    """Column-major 2-d buffer; elements may be the UNDEF sentinel."""

    __slots__ = ("rows", "cols", "data", "is_int")

    def __init__(self, rows: int, cols: int, data: list, is_int: bool):
        self.rows = rows
        self.cols = cols
        self.data = data
        self.is_int = is_int

    @classmethod
    def filled(cls, rows: int, cols: int, is_int: bool, init: bool) -> "PyArr":
        rows = max(rows, 0)
        cols = max(cols, 0)
        fill = (0 if is_int else 0.0) if init else UNDEF
        return cls(rows, cols, [fill] * (rows * cols), is_int)

    @classmethod
    def empty(cls, is_int: bool) -> "PyArr":
        return cls(0, 0, [], is_int)

    def clone(self) -> "PyArr":
        return PyArr(self.rows, self.cols, list(self.data), self.is_int)

    def get(self, r: int, c: int):
        return self.data[r + c * self.rows]


def format_scalar(v, is_int: bool) -> str:
    if is_int:
        return str(v)
    return f"{v:.17g}"


def format_value(v) -> str:
    if isinstance(v, PyArr):
        out = [f"array {v.rows} {v.cols}"]
        data, rows = v.data, v.rows
        for r in range(rows):
            cells = []
            for c in range(v.cols):
                x = data[r + c * rows]
                if x is UNDEF:
                    raise Fault("UninitializedRead", "array element read before it is written")
                cells.append(format_scalar(x, v.is_int))
            out.append(" ".join(cells))
        return "\n".join(out) + "\n"
    if isinstance(v, int):
        return format_scalar(v, True) + "\n"
    return format_scalar(v, False) + "\n"


@dataclass
class ExecResult:
    value: object = None
    exit: str = "normal"  # "normal" | "error-return"
    message: Optional[str] = None


_Closure = Callable[[list], object]


def _live(v):
    if v is UNDEF:
        raise Fault("UninitializedRead", "array element read before it is written")
    return v


def _shape_fail():
    raise Fault("ShapeMismatch", "nonconformant arguments")


def _elem_fault(no_check: bool) -> str:
    return "UndefinedBehavior" if no_check else "BoundsError"


class _Compiler:
    def __init__(self, tp: TypedProgram):
        self.tp = tp
        # slots whose reads must be guarded against the UNDEF sentinel:
        # declared inside a nested block (might be skipped dynamically) or
        # declared bare while no_init_vars is in force
        self.unsafe_slots: set[int] = set()
        rv = tp.retvar
        if not rv.ty.is_array and tp.header_state.no_init:
            self.unsafe_slots.add(rv.slot)
        self._scan_decls(tp.program.function.body, depth=0)

    def _scan_decls(self, body, depth: int):
        for st in body:
            if isinstance(st, VarDecl) and st.sym is not None:
                if depth > 0 or (st.init is None and not st.ty.is_array and st.state.no_init):
                    self.unsafe_slots.add(st.sym.slot)
            elif isinstance(st, If):
                self._scan_decls(st.then_body, depth + 1)
                if st.else_body is not None:
                    self._scan_decls(st.else_body, depth + 1)
            elif isinstance(st, For):
                self._scan_decls(st.body, depth + 1)

    # ---- expressions ----

    def cexpr(self, e: Expr, state) -> _Closure:
        if isinstance(e, IntLit):
            v = sat(e.value)
            return lambda env: v
        if isinstance(e, RealLit):
            v = e.value
            return lambda env: v
        if isinstance(e, Var):
            slot = e.sym.slot
            if slot in self.unsafe_slots:
                name = e.name

                def read(env):
                    v = env[slot]
                    if v is UNDEF:
                        raise Fault("UninitializedRead", f"'{name}' read before it is assigned")
                    return v

                return read
            return lambda env: env[slot]
        if isinstance(e, UnaryOp):
            f = self.cexpr(e.operand, state)
            ty = e.ty
            if ty is TymType.FLOAT:
                return lambda env: f32(-f(env))
            if ty is not None and ty.is_array:
                is_int = ty is TymType.INT_ARRAY

                def neg_arr(env):
                    a = f(env)
                    if is_int:
                        return PyArr(a.rows, a.cols, [sat(-_live(v)) for v in a.data], True)
                    return PyArr(a.rows, a.cols, [-_live(v) for v in a.data], False)

                return neg_arr
            return lambda env: -f(env)
        if isinstance(e, BinOp):
            return self.cbinop(e, state)
        if isinstance(e, Apply):
            return self.capply(e, state)
        raise ValueError(f"cannot compile expression {e!r}")

    def cbinop(self, e: BinOp, state) -> _Closure:
        lf = self.cexpr(e.lhs, state)
        rf = self.cexpr(e.rhs, state)
        op = e.op
        lt, rt = e.lhs.ty, e.rhs.ty
        if op == "&&":
            return lambda env: 1 if lf(env) != 0 and rf(env) != 0 else 0
        if op == "||":
            return lambda env: 1 if lf(env) != 0 or rf(env) != 0 else 0
        if op == "==":
            return lambda env: 1 if lf(env) == rf(env) else 0
        if op == "~=":
            return lambda env: 1 if lf(env) != rf(env) else 0
        if op == "<":
            return lambda env: 1 if lf(env) < rf(env) else 0
        if op == "<=":
            return lambda env: 1 if lf(env) <= rf(env) else 0
        if op == ">":
            return lambda env: 1 if lf(env) > rf(env) else 0
        if op == ">=":
            return lambda env: 1 if lf(env) >= rf(env) else 0
        if lt.is_array or rt.is_array:
            return self._arr_arith(op, lf, rf, lt, rt)
        res = e.ty
        if res is TymType.INT:
            # wide; saturation happens at the destination store
            if op == "+":
                return lambda env: lf(env) + rf(env)
            if op == "-":
                return lambda env: lf(env) - rf(env)
            if op == "*":
                return lambda env: lf(env) * rf(env)
            return lambda env: int_div(lf(env), rf(env))
        if res is TymType.FLOAT:
            if op == "+":
                return lambda env: f32(lf(env) + rf(env))
            if op == "-":
                return lambda env: f32(lf(env) - rf(env))
            if op == "*":
                return lambda env: f32(lf(env) * rf(env))
            return lambda env: f32(fdiv(lf(env), rf(env)))
        if op == "+":
            return lambda env: lf(env) + rf(env)
        if op == "-":
            return lambda env: lf(env) - rf(env)
        if op == "*":
            return lambda env: lf(env) * rf(env)
        return lambda env: fdiv(float(lf(env)), float(rf(env)))

    def _arr_arith(self, op, lf, rf, lt, rt) -> _Closure:
        if lt.is_array and rt.is_array:
            res_int = lt is TymType.INT_ARRAY and rt is TymType.INT_ARRAY

            def run_aa(env):
                return _ew_arrays(lf(env), rf(env), op, res_int)

            return run_aa
        if lt.is_array:
            res_int = lt is TymType.INT_ARRAY and rt is TymType.INT

            def run_as(env):
                return _ew_scalar(lf(env), rf(env), op, res_int, scalar_on_left=False)

            return run_as
        res_int = rt is TymType.INT_ARRAY and lt is TymType.INT

        def run_sa(env):
            return _ew_scalar(rf(env), lf(env), op, res_int, scalar_on_left=True)

        return run_sa

    def capply(self, e: Apply, state) -> _Closure:
        if e.resolved == "builtin":
            arg_f = self.cexpr(e.args[0].value, state)
            if e.name == "rows":
                return lambda env: arg_f(env).rows
            return lambda env: arg_f(env).cols
        slot = e.sym.slot
        if e.resolved == "index":
            return self._elem_load(e, slot, state)
        return self._slice_load(e, slot, state)

    def _elem_load(self, e: Apply, slot: int, state) -> _Closure:
        shift = 0 if state.zero_based else 1
        fcode = _elem_fault(state.no_check)
        name = e.name
        if len(e.args) == 1:
            i_f = self.cexpr(e.args[0].value, state)

            def load1(env):
                arr = env[slot]
                k = i_f(env) - shift
                data = arr.data
                if k < 0 or k >= len(data):
                    raise Fault(fcode, f"index ({k + shift}) out of bounds for '{name}'")
                v = data[k]
                if v is UNDEF:
                    raise Fault("UninitializedRead", f"element of '{name}' read before it is written")
                return v

            return load1
        i_f = self.cexpr(e.args[0].value, state)
        j_f = self.cexpr(e.args[1].value, state)

        def load2(env):
            arr = env[slot]
            r = i_f(env) - shift
            c = j_f(env) - shift
            rows = arr.rows
            if r < 0 or r >= rows or c < 0 or c >= arr.cols:
                raise Fault(fcode, f"index ({r + shift}, {c + shift}) out of bounds for '{name}'")
            v = arr.data[r + c * rows]
            if v is UNDEF:
                raise Fault("UninitializedRead", f"element of '{name}' read before it is written")
            return v

        return load2

    def _selector(self, arg, state):
        """Compile one index argument to fn(env, dim) -> 0-based index sequence."""
        if isinstance(arg, ColonArg):
            return lambda env, dim: range(dim)
        shift = 0 if state.zero_based else 1
        if isinstance(arg, ScalarArg):
            f = self.cexpr(arg.value, state)

            def one(env, dim):
                k = f(env) - shift
                if k < 0 or k >= dim:
                    raise Fault("BoundsError", f"index ({k + shift}) out of bounds in slice")
                return (k,)

            return one
        r = arg.range
        a_f = self.cexpr(r.start, state)
        b_f = self.cexpr(r.stop, state)
        s_f = self.cexpr(r.step, state) if r.step is not None else None

        def rng(env, dim):
            step = s_f(env) if s_f is not None else 1
            if step < 1:
                raise Fault("BoundsError", "invalid slice step")
            lo = a_f(env) - shift
            hi = b_f(env) - shift + 1
            idx = range(lo, hi, step)
            if len(idx) and (idx[0] < 0 or idx[-1] >= dim):
                raise Fault("BoundsError", f"slice ({lo + shift}:{hi - 1 + shift}) out of bounds")
            return idx

        return rng

    def _slice_load(self, e: Apply, slot: int, state) -> _Closure:
        is_int = e.sym.ty is TymType.INT_ARRAY
        if len(e.args) == 1:
            sel = self._selector(e.args[0], state)

            def load_lin(env):
                arr = env[slot]
                data = arr.data
                idx = sel(env, len(data))
                out = [_live(data[k]) for k in idx]
                return PyArr(len(out), 1 if out else 0, out, is_int)

            return load_lin
        sel1 = self._selector(e.args[0], state)
        sel2 = self._selector(e.args[1], state)

        def load_2d(env):
            arr = env[slot]
            rows = arr.rows
            data = arr.data
            ridx = sel1(env, rows)
            cidx = sel2(env, arr.cols)
            out = []
            for c in cidx:
                base = c * rows
                for r in ridx:
                    out.append(_live(data[r + base]))
            return PyArr(len(ridx), len(cidx), out, is_int)

        return load_2d

    # ---- statements ----

    def _store_scalar(self, target_ty: TymType, value_ty: TymType, value_f: _Closure, slot: int) -> _Closure:
        if target_ty is TymType.INT:
            if value_ty is TymType.INT:

                def store(env):
                    env[slot] = sat(value_f(env))

            else:

                def store(env):
                    env[slot] = real_to_int(value_f(env))

        elif target_ty is TymType.FLOAT:

            def store(env):
                env[slot] = f32(value_f(env))

        else:

            def store(env):
                env[slot] = float(value_f(env))

        return store

    def cstmt(self, st) -> Optional[_Closure]:
        if isinstance(st, DirectiveStmt):
            return None
        state = st.state
        if isinstance(st, VarDecl):
            slot = st.sym.slot
            if st.ty.is_array:
                if st.init is None:
                    is_int = st.ty is TymType.INT_ARRAY

                    def decl_arr(env):
                        env[slot] = PyArr.empty(is_int)

                    return decl_arr
                value_f = self.cexpr(st.init, state)
                clone_src = isinstance(st.init, Var)

                def bind_arr(env):
                    v = value_f(env)
                    env[slot] = v.clone() if clone_src else v

                return bind_arr
            if st.init is not None:
                return self._store_scalar(st.ty, st.init.ty, self.cexpr(st.init, state), slot)
            if state.no_init:

                def decl_undef(env):
                    env[slot] = UNDEF

                return decl_undef
            zero = 0 if st.ty is TymType.INT else 0.0

            def decl_zero(env):
                env[slot] = zero

            return decl_zero
        if isinstance(st, Assign):
            entry = st.sym
            slot = entry.slot
            value_f = self.cexpr(st.value, state)
            if not entry.ty.is_array:
                return self._store_scalar(entry.ty, st.value.ty, value_f, slot)
            if st.binding:
                clone_src = isinstance(st.value, Var)

                def bind(env):
                    v = value_f(env)
                    env[slot] = v.clone() if clone_src else v

                return bind

            def place_stmt(env):
                _place(env[slot], value_f(env))

            return place_stmt
        if isinstance(st, IndexedAssign):
            return self.c_indexed_assign(st)
        if isinstance(st, ExprStmt):
            return self.c_expr_stmt(st)
        if isinstance(st, If):
            cond_f = self.cexpr(st.cond, state)
            then_t = self.cbody(st.then_body)
            else_t = self.cbody(st.else_body) if st.else_body is not None else ()

            def run_if(env):
                if cond_f(env) != 0:
                    for f in then_t:
                        f(env)
                else:
                    for f in else_t:
                        f(env)

            return run_if
        if isinstance(st, For):
            return self.c_for(st)
        raise ValueError(f"cannot compile statement {st!r}")

    def c_indexed_assign(self, st: IndexedAssign) -> _Closure:
        state = st.state
        entry = st.sym
        slot = entry.slot
        value_f = self.cexpr(st.value, state)
        elem_int = entry.ty is TymType.INT_ARRAY
        if any(isinstance(a, (SliceArg, ColonArg)) for a in st.args):
            sels = [self._selector(a, state) for a in st.args]
            if len(sels) == 1:
                sel = sels[0]

                def slice_store_lin(env):
                    arr = env[slot]
                    data = arr.data
                    idx = list(sel(env, len(data)))
                    _store_linear(data, idx, value_f(env))

                return slice_store_lin
            sel1, sel2 = sels

            def slice_store_2d(env):
                arr = env[slot]
                ridx = list(sel1(env, arr.rows))
                cidx = list(sel2(env, arr.cols))
                _store_2d(arr.data, arr.rows, ridx, cidx, value_f(env))

            return slice_store_2d
        shift = 0 if state.zero_based else 1
        fcode = _elem_fault(state.no_check)
        name = st.name
        value_is_int = st.value.ty is TymType.INT
        if len(st.args) == 1:
            i_f = self.cexpr(st.args[0].value, state)

            def store1(env):
                arr = env[slot]
                k = i_f(env) - shift
                data = arr.data
                if k < 0 or k >= len(data):
                    raise Fault(fcode, f"index ({k + shift}) out of bounds for '{name}'")
                v = value_f(env)
                if elem_int:
                    data[k] = sat(v) if value_is_int else real_to_int(v)
                else:
                    data[k] = float(v)

            return store1
        i_f = self.cexpr(st.args[0].value, state)
        j_f = self.cexpr(st.args[1].value, state)
        if elem_int and value_is_int:

            def store2(env):
                arr = env[slot]
                r = i_f(env) - shift
                c = j_f(env) - shift
                rows = arr.rows
                if r < 0 or r >= rows or c < 0 or c >= arr.cols:
                    raise Fault(fcode, f"index ({r + shift}, {c + shift}) out of bounds for '{name}'")
                arr.data[r + c * rows] = sat(value_f(env))

        elif elem_int:

            def store2(env):
                arr = env[slot]
                r = i_f(env) - shift
                c = j_f(env) - shift
                rows = arr.rows
                if r < 0 or r >= rows or c < 0 or c >= arr.cols:
                    raise Fault(fcode, f"index ({r + shift}, {c + shift}) out of bounds for '{name}'")
                arr.data[r + c * rows] = real_to_int(value_f(env))

        else:

            def store2(env):
                arr = env[slot]
                r = i_f(env) - shift
                c = j_f(env) - shift
                rows = arr.rows
                if r < 0 or r >= rows or c < 0 or c >= arr.cols:
                    raise Fault(fcode, f"index ({r + shift}, {c + shift}) out of bounds for '{name}'")
                arr.data[r + c * rows] = float(value_f(env))

        return store2

    def c_expr_stmt(self, st: ExprStmt) -> _Closure:
        call = st.call
        state = st.state
        if call.name == "error":
            msg = call.args[0].value.value

            def raise_error(env):
                raise ErrorReturn(msg)

            return raise_error
        slot = call.sym.slot
        is_int = call.sym.ty is TymType.INT_ARRAY
        init = not state.no_init
        r_f = self.cexpr(call.args[1].value, state)
        c_f = self.cexpr(call.args[2].value, state)

        def create(env):
            env[slot] = PyArr.filled(r_f(env), c_f(env), is_int, init)

        return create

    def c_for(self, st: For) -> _Closure:
        state = st.state
        slot = st.sym.slot
        r = st.bounds
        start_f = self.cexpr(r.start, state)
        stop_f = self.cexpr(r.stop, state)
        body_t = self.cbody(st.body)
        if r.step is None:

            def run_up1(env):
                env[slot] = sat(start_f(env))
                while env[slot] <= stop_f(env):
                    for f in body_t:
                        f(env)
                    env[slot] = sat(env[slot] + 1)

            return run_up1
        step_f = self.cexpr(r.step, state)
        lit = literal_int(r.step)
        # comparison direction comes from the literal step sign, the same
        # static choice the compiled for-loop makes; a dynamic step value only
        # changes the increment
        if lit is not None and lit < 0:

            def run_down(env):
                env[slot] = sat(start_f(env))
                while env[slot] >= stop_f(env):
                    for f in body_t:
                        f(env)
                    env[slot] = sat(env[slot] + step_f(env))

            return run_down

        def run_up(env):
            env[slot] = sat(start_f(env))
            while env[slot] <= stop_f(env):
                for f in body_t:
                    f(env)
                env[slot] = sat(env[slot] + step_f(env))

        return run_up

    def cbody(self, body) -> tuple:
        out = []
        for st in body:
            f = self.cstmt(st)
            if f is not None:
                out.append(f)
        return tuple(out)


def _ew_arrays(a: PyArr, b: PyArr, op: str, res_int: bool) -> PyArr:
    if a.rows == b.rows and a.cols == b.cols:
        rows, cols = a.rows, a.cols
        pairs = zip(a.data, b.data)
    elif a.rows == 1 and a.cols == 1:
        return _ew_scalar(b, _live(a.data[0]), op, res_int, scalar_on_left=True)
    elif b.rows == 1 and b.cols == 1:
        return _ew_scalar(a, _live(b.data[0]), op, res_int, scalar_on_left=False)
    else:
        _shape_fail()
    if res_int:
        if op == "+":
            out = [sat(_live(x) + _live(y)) for x, y in pairs]
        elif op == "-":
            out = [sat(_live(x) - _live(y)) for x, y in pairs]
        elif op == "*":
            out = [sat(_live(x) * _live(y)) for x, y in pairs]
        else:
            out = [sat(int_div(_live(x), _live(y))) for x, y in pairs]
        return PyArr(rows, cols, out, True)
    if op == "+":
        out = [_live(x) + _live(y) for x, y in pairs]
    elif op == "-":
        out = [_live(x) - _live(y) for x, y in pairs]
    elif op == "*":
        out = [_live(x) * _live(y) for x, y in pairs]
    else:
        out = [fdiv(float(_live(x)), float(_live(y))) for x, y in pairs]
    return PyArr(rows, cols, out, False)


def _ew_scalar(a: PyArr, s, op: str, res_int: bool, scalar_on_left: bool) -> PyArr:
    data = a.data
    if res_int:
        if op == "+":
            out = [sat(_live(x) + s) for x in data]
        elif op == "-":
            out = [sat(s - _live(x)) for x in data] if scalar_on_left else [sat(_live(x) - s) for x in data]
        elif op == "*":
            out = [sat(_live(x) * s) for x in data]
        elif scalar_on_left:
            out = [sat(int_div(s, _live(x))) for x in data]
        else:
            out = [sat(int_div(_live(x), s)) for x in data]
        return PyArr(a.rows, a.cols, out, True)
    sf = float(s)
    if op == "+":
        out = [_live(x) + sf for x in data]
    elif op == "-":
        out = [sf - _live(x) for x in data] if scalar_on_left else [_live(x) - sf for x in data]
    elif op == "*":
        out = [_live(x) * sf for x in data]
    elif scalar_on_left:
        out = [fdiv(sf, float(_live(x))) for x in data]
    else:
        out = [fdiv(float(_live(x)), sf) for x in data]
    return PyArr(a.rows, a.cols, out, False)


def _place(dst: PyArr, src: PyArr):
    if src.rows > dst.rows or src.cols > dst.cols:
        _shape_fail()
    ddata, sdata = dst.data, src.data
    drows, srows = dst.rows, src.rows
    for c in range(src.cols):
        for r in range(srows):
            ddata[r + c * drows] = sdata[r + c * srows]


def _store_linear(data: list, idx: list, src: PyArr):
    if src.rows * src.cols == 1:
        v = _live(src.data[0])
        for k in idx:
            data[k] = v
        return
    if src.rows * src.cols != len(idx):
        _shape_fail()
    sdata = src.data
    for pos, k in enumerate(idx):
        data[k] = _live(sdata[pos])


def _store_2d(data: list, rows: int, ridx: list, cidx: list, src: PyArr):
    n1, n2 = len(ridx), len(cidx)
    if src.rows == 1 and src.cols == 1:
        v = _live(src.data[0])
        for c in cidx:
            base = c * rows
            for r in ridx:
                data[r + base] = v
        return
    if src.rows != n1 or src.cols != n2:
        _shape_fail()
    sdata = src.data
    for q, c in enumerate(cidx):
        base = c * rows
        sbase = q * n1
        for p, r in enumerate(ridx):
            data[r + base] = _live(sdata[sbase + p])


class CompiledProgram:
    def __init__(self, tp: TypedProgram):
        if tp.has_errors:
            raise ValueError("cannot interpret a program with errors")
        self.tp = tp
        comp = _Compiler(tp)
        self.body = comp.cbody(tp.program.function.body)
        self.n_slots = tp.n_slots
        self.params = tp.params
        self.retvar = tp.retvar
        rv = tp.retvar
        if rv.ty.is_array:
            self.ret_init = "array"
        elif tp.header_state.no_init:
            self.ret_init = "undef"
        else:
            self.ret_init = "zero"

    def run(self, args: list) -> ExecResult:
        env = [UNDEF] * self.n_slots
        for entry, arg in zip(self.params, args):
            # parameters are by value; keep the caller's arrays untouched
            env[entry.slot] = arg.clone() if isinstance(arg, PyArr) else arg
        rv = self.retvar
        if self.ret_init == "array":
            env[rv.slot] = PyArr.empty(rv.ty is TymType.INT_ARRAY)
        elif self.ret_init == "zero":
            env[rv.slot] = 0 if rv.ty is TymType.INT else 0.0
        try:
            for f in self.body:
                f(env)
        except ErrorReturn as er:
            return ExecResult(exit="error-return", message=er.message)
        result = env[rv.slot]
        if result is UNDEF:
            raise Fault("UninitializedRead", f"return value '{rv.name}' was never assigned")
        return ExecResult(value=result)


def compile_program(tp: TypedProgram) -> CompiledProgram:
    return CompiledProgram(tp)


def run(tp: TypedProgram, args: list) -> ExecResult:
    return compile_program(tp).run(args)
