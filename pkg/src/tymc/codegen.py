"""C++ emission from an analyzed program.

Two targets share every lowering decision (index shifts, accessor choice,
selector arithmetic, zero-init policy) and differ only in spellings: `octave`
writes code against the Octave library API and is compared as text, never
compiled here; `standalone` writes code against the bundled runtime header and
is built and executed in tests.
"""
from __future__ import annotations

from dataclasses import dataclass

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
    RangeExpr,
    RealLit,
    ScalarArg,
    SliceArg,
    StringLit,
    TymType,
    UnaryOp,
    Var,
    VarDecl,
)
from .sema import INT_MAX, INT_MIN, DirectiveState, TypedProgram, literal_int


@dataclass(frozen=True)
class Target:
    name: str
    includes: tuple[str, ...]
    int_array: str
    real_array: str
    value_list: str
    idx_vector: str
    colon: str
    dim_vector: str
    int_fill: str
    arg_guard: bool

    def type_of(self, ty: TymType) -> str:
        return {
            TymType.INT: "int",
            TymType.REAL: "double",
            TymType.FLOAT: "float",
            TymType.INT_ARRAY: self.int_array,
            TymType.REAL_ARRAY: self.real_array,
        }[ty]


OCTAVE = Target(
    name="octave",
    includes=("#include <octave/oct.h>", "#include <iostream>", "#include <cstdlib>"),
    int_array="int32NDArray",
    real_array="NDArray",
    value_list="octave_value_list",
    idx_vector="idx_vector",
    colon="idx_vector::colon",
    dim_vector="dim_vector",
    int_fill="octave_int32(0)",
    arg_guard=False,
)

STANDALONE = Target(
    name="standalone",
    includes=('#include "tym_runtime.hpp"',),
    int_array="tym::int_array",
    real_array="tym::real_array",
    value_list="tym::value_list",
    idx_vector="tym::idx_vector",
    colon="tym::idx_vector::colon",
    dim_vector="tym::dim_vector",
    int_fill="tym::int32(0)",
    arg_guard=True,
)

TARGETS = {"octave": OCTAVE, "standalone": STANDALONE}


@dataclass(frozen=True)
class LoweredModule:
    source_text: str
    function_name: str
    target: str


# C++ operator precedence for minimal-parens emission. tym keeps == and <
# in one tier but C does not, so e.g. `a == b < c` must emit `(a == b) < c`.
_C_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3, "~=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6,
}
_C_OP = {"~=": "!="}

_EXTRACT = {
    TymType.INT: "int {v} = args({i}).int32_array_value()(0);",
    TymType.REAL: "double {v} = args({i}).array_value()(0);",
    TymType.FLOAT: "float {v} = args({i}).float_array_value()(0);",
}


def escape_cstr(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


class _Emitter:
    def __init__(self, tp: TypedProgram, target: Target):
        self.tp = tp
        self.t = target
        self.lines: list[str] = []
        self.indent = 0

    def put(self, text: str = ""):
        self.lines.append("    " * self.indent + text if text else "")

    # ---- expressions ----

    def expr(self, e: Expr, state: DirectiveState, parent_prec: int = 0, right: bool = False) -> str:
        if isinstance(e, IntLit):
            return str(min(max(e.value, INT_MIN), INT_MAX))
        if isinstance(e, RealLit):
            return e.text if e.text else repr(e.value)
        if isinstance(e, StringLit):
            return f'"{escape_cstr(e.value)}"'
        if isinstance(e, Var):
            return e.name
        if isinstance(e, UnaryOp):
            inner = self.expr(e.operand, state, parent_prec=7)
            if isinstance(e.operand, (BinOp, UnaryOp)):
                return f"-({self.expr(e.operand, state)})"
            return f"-{inner}"
        if isinstance(e, BinOp):
            prec = _C_PREC[e.op]
            lhs = self.expr(e.lhs, state, prec, right=False)
            rhs = self.expr(e.rhs, state, prec, right=True)
            op = _C_OP.get(e.op, e.op)
            text = f"{lhs} {op} {rhs}"
            if prec < parent_prec or (right and prec == parent_prec):
                return f"({text})"
            return text
        if isinstance(e, Apply):
            return self.apply(e, state)
        raise ValueError(f"cannot lower expression {e!r}")

    def atom(self, e: Expr, state: DirectiveState) -> str:
        """Expression text safe to splice into selector arithmetic."""
        text = self.expr(e, state)
        if isinstance(e, (IntLit, RealLit, Var, Apply)):
            return text
        return f"({text})"

    def apply(self, e: Apply, state: DirectiveState) -> str:
        if e.resolved == "builtin":
            arg = e.args[0].value
            recv = self.expr(arg, state) if isinstance(arg, (Var, Apply)) else f"({self.expr(arg, state)})"
            return f"{recv}.{e.name}()"
        if e.resolved == "index":
            return f"{e.name}.{self.accessor(state)}({self.indices(e.args, state)})"
        if e.resolved == "slice":
            sels = ", ".join(self.selector(a, state) for a in e.args)
            cast = self.t.type_of(e.sym.ty)
            return f"(({cast}){e.name}.index({sels}))"
        raise ValueError(f"unresolved apply {e.name!r}")

    def accessor(self, state: DirectiveState) -> str:
        return "xelem" if state.no_check else "checkelem"

    def indices(self, args, state: DirectiveState) -> str:
        parts = []
        for a in args:
            text = self.expr(a.value, state)
            parts.append(text if state.zero_based else f"({text}) - 1")
        return ", ".join(parts)

    def selector(self, arg, state: DirectiveState) -> str:
        iv = self.t.idx_vector
        if isinstance(arg, ColonArg):
            return self.t.colon
        if isinstance(arg, ScalarArg):
            text = self.atom(arg.value, state)
            return f"{iv}({text})" if state.zero_based else f"{iv}({text} - 1)"
        r = arg.range
        a = self.atom(r.start, state)
        b = self.atom(r.stop, state)
        s = self.atom(r.step, state) if r.step is not None else "1"
        if state.zero_based:
            return f"{iv}({a}, {b} + 1, {s})"
        return f"{iv}({a} - 1, {b} - 1 + 1, {s})"

    # ---- statements ----

    def stmt(self, st):
        state = st.state
        if isinstance(st, DirectiveStmt):
            return
        if isinstance(st, VarDecl):
            cpp_ty = self.t.type_of(st.ty)
            if st.init is not None:
                self.put(f"{cpp_ty} {st.name} = {self.expr(st.init, state)};")
            elif st.ty.is_array or state.no_init:
                self.put(f"{cpp_ty} {st.name};")
            else:
                self.put(f"{cpp_ty} {st.name} = 0;")
            return
        if isinstance(st, Assign):
            rhs = self.expr(st.value, state)
            if st.sym is not None and st.sym.ty.is_array and not st.binding and self.t.name == "standalone":
                self.put(f"{st.name}.place({rhs});")
            else:
                self.put(f"{st.name} = {rhs};")
            return
        if isinstance(st, IndexedAssign):
            rhs = self.expr(st.value, state)
            if any(isinstance(a, (SliceArg, ColonArg)) for a in st.args):
                sels = ", ".join(self.selector(a, state) for a in st.args)
                self.put(f"{st.name}.assign({sels}, {rhs});")
            else:
                self.put(f"{st.name}.{self.accessor(state)}({self.indices(st.args, state)}) = {rhs};")
            return
        if isinstance(st, ExprStmt):
            self.expr_stmt(st)
            return
        if isinstance(st, If):
            self.put(f"if (({self.expr(st.cond, state)})) {{")
            self.indent += 1
            for inner in st.then_body:
                self.stmt(inner)
            self.indent -= 1
            if st.else_body is not None:
                self.put("} else {")
                self.indent += 1
                for inner in st.else_body:
                    self.stmt(inner)
                self.indent -= 1
            self.put("}")
            return
        if isinstance(st, For):
            r = st.bounds
            start = self.expr(r.start, state)
            stop = self.expr(r.stop, state)
            step = self.expr(r.step, state) if r.step is not None else "1"
            lit = literal_int(r.step) if r.step is not None else 1
            cmp = ">=" if (lit is not None and lit < 0) else "<="
            v = st.var
            self.put(f"for ({v} = ({start}); {v} {cmp} ({stop}); {v} += ({step})) {{")
            self.indent += 1
            for inner in st.body:
                self.stmt(inner)
            self.indent -= 1
            self.put("}")
            return
        raise ValueError(f"cannot lower statement {st!r}")

    def expr_stmt(self, st: ExprStmt):
        call = st.call
        state = st.state
        if call.name == "error":
            msg = escape_cstr(call.args[0].value.value)
            if self.t.name == "octave":
                self.put(f'error("{msg}");')
            else:
                self.put(f'tym::fail("{msg}");')
            self.put("return retval;")
            return
        # createArray
        entry = call.sym
        cpp_ty = self.t.type_of(entry.ty)
        d1 = self.expr(call.args[1].value, state)
        d2 = self.expr(call.args[2].value, state)
        dims = f"{self.t.dim_vector}({d1}, {d2})"
        if state.no_init:
            ctor_args = dims
        else:
            fill = self.t.int_fill if entry.ty is TymType.INT_ARRAY else "0.0"
            ctor_args = f"{dims}, {fill}"
        if st.decl_form:
            # fuses declaration and allocation: int32NDArray z(dim_vector(a, b));
            self.put(f"{cpp_ty} {entry.name}({ctor_args});")
        else:
            self.put(f"{entry.name} = {cpp_ty}({ctor_args});")

    # ---- module ----

    def emit(self) -> str:
        fn = self.tp.program.function
        t = self.t
        for inc in t.includes:
            self.put(inc)
        if t.name == "octave":
            self.put(f'DEFUN_DLD ({fn.name}, args, nargout, "") {{')
        else:
            self.put("")
            self.put(f"TYM_DEFUN({fn.name}) {{")
        self.indent = 1
        self.put(f"{t.value_list} retval;")
        self.put("")
        for i, entry in enumerate(self.tp.params):
            if entry.ty.is_array:
                method = "int32_array_value" if entry.ty is TymType.INT_ARRAY else "array_value"
                self.put(f"{t.type_of(entry.ty)} {entry.name} = args({i}).{method}();")
            else:
                self.put(_EXTRACT[entry.ty].format(v=entry.name, i=i))
        if t.arg_guard:
            self.put(f"if (args.length() != {len(self.tp.params)}) {{")
            self.indent += 1
            self.put('tym::fail("invalid number of input params");')
            self.put("return retval;")
            self.indent -= 1
            self.put("}")
            self.put("if (tym::failed()) {")
            self.indent += 1
            self.put('tym::fail("invalid type of input parameters");')
            self.put("return retval;")
            self.indent -= 1
            self.put("}")
        rv = self.tp.retvar
        if self.tp.ret_top_decl:
            cpp_ty = t.type_of(rv.ty)
            if rv.ty.is_array or self.tp.header_state.no_init:
                self.put(f"{cpp_ty} {rv.name};")
            else:
                self.put(f"{cpp_ty} {rv.name} = 0;")
        for st in fn.body:
            self.stmt(st)
        self.put(f"retval(0) = {rv.name};")
        self.put("return retval;")
        self.indent = 0
        self.put("}")
        if t.name == "standalone":
            self.put("")
            self.put(f"TYM_MAIN({fn.name})")
        return "\n".join(self.lines) + "\n"


def emit_module(tp: TypedProgram, target: str | Target) -> LoweredModule:
    t = TARGETS[target] if isinstance(target, str) else target
    if tp.has_errors:
        raise ValueError("cannot emit a module from a program with errors")
    text = _Emitter(tp, t).emit()
    return LoweredModule(text, tp.program.function.name, t.name)
