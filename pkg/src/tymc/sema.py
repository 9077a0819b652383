"""Static analysis: name resolution, typing, directive tracking.

Annotates the AST in place (entries, per-statement directive snapshots,
binding/placement and declaration-form marks) and collects diagnostics.
Analysis is line-ordered and flow-insensitive; the interpreter catches the
dynamic definedness gaps this model cannot see.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .ast_nodes import (
    Apply,
    Assign,
    BinOp,
    ColonArg,
    DirectiveStmt,
    Expr,
    ExprStmt,
    For,
    FunctionDef,
    If,
    IndexedAssign,
    IntLit,
    Program,
    RangeExpr,
    RealLit,
    ScalarArg,
    SliceArg,
    StringLit,
    TymType,
    UnaryOp,
    Var,
    VarDecl,
    walk_stmts,
)
from .diagnostics import Diagnostic, error, warning

BUILTINS = ("rows", "columns", "error", "createArray")

KNOWN_DIRECTIVES = ("zero_based_arrays", "no_init_vars", "no_check_ranges")

INT_MIN = -(2**31)
INT_MAX = 2**31 - 1


@dataclass(frozen=True)
class DirectiveState:
    zero_based: bool = False
    no_init: bool = False
    no_check: bool = False


_DIRECTIVE_FIELD = {
    "zero_based_arrays": "zero_based",
    "no_init_vars": "no_init",
    "no_check_ranges": "no_check",
}


@dataclass
class SymbolEntry:
    name: str
    ty: TymType
    slot: int
    kind: str  # "param" | "retvar" | "local"
    decl_line: int
    defined: bool = False
    def_line: int | None = None

    def define(self, line: int):
        self.defined = True
        if self.def_line is None:
            self.def_line = line


@dataclass
class TypedProgram:
    program: Program
    filename: str
    diagnostics: list[Diagnostic]
    n_slots: int = 0
    params: list[SymbolEntry] = field(default_factory=list)
    retvar: SymbolEntry | None = None
    ret_top_decl: bool = True
    header_state: DirectiveState = DirectiveState()

    @property
    def has_errors(self) -> bool:
        return any(d.severity == "error" for d in self.diagnostics)

    def rendered(self) -> list[str]:
        return [d.render(self.filename) for d in self.diagnostics]


def literal_int(e: Expr) -> int | None:
    """Value of an integer literal, allowing a single leading minus."""
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, UnaryOp) and e.op == "-" and isinstance(e.operand, IntLit):
        return -e.operand.value
    return None


_SCALARS = (TymType.INT, TymType.REAL, TymType.FLOAT)


def _combine_arith(lt: TymType, rt: TymType) -> TymType | None:
    """Result type for + - * /, or None when the pairing is rejected."""
    if lt.is_array or rt.is_array:
        if lt == rt:
            return lt
        if lt.is_array and rt in _SCALARS:
            arr, scal = lt, rt
        elif rt.is_array and lt in _SCALARS:
            arr, scal = rt, lt
        else:
            return None  # mixed int/real arrays
        if scal is TymType.FLOAT:
            return None  # there is no floatArray to widen into
        if arr is TymType.INT_ARRAY and scal is TymType.REAL:
            return TymType.REAL_ARRAY  # element type widens with the scalar
        return arr
    if TymType.REAL in (lt, rt):
        return TymType.REAL
    if TymType.FLOAT in (lt, rt):
        return TymType.FLOAT
    return TymType.INT


def _store_ok(target: TymType, value: TymType) -> tuple[bool, bool]:
    """(allowed, narrowing_warn) for storing a scalar value into target."""
    if target is TymType.INT:
        if value is TymType.INT:
            return True, False
        if value in (TymType.REAL, TymType.FLOAT):
            return True, True
        return False, False
    if target in (TymType.REAL, TymType.FLOAT):
        return value in _SCALARS, False
    return False, False


class _Analyzer:
    def __init__(self, program: Program, filename: str):
        self.program = program
        self.filename = filename
        self.diags: list[Diagnostic] = []
        self.scopes: list[dict[str, SymbolEntry]] = []
        self.next_slot = 0
        self.activations: list[tuple[int, str]] = []
        self.ret_entry: SymbolEntry | None = None
        # None until the return variable is first touched; then "use" | "def"
        # | the createArray ExprStmt that can double as its declaration
        self.ret_first = None

    # ---- bookkeeping ----

    def err(self, code: str, message: str, line: int, col: int = 1):
        self.diags.append(error(code, message, line, col))

    def warn(self, code: str, message: str, line: int, col: int = 1):
        self.diags.append(warning(code, message, line, col))

    def state_for(self, line: int) -> DirectiveState:
        st = DirectiveState()
        for aline, name in self.activations:
            if aline < line:
                st = replace(st, **{_DIRECTIVE_FIELD[name]: True})
        return st

    def lookup(self, name: str) -> SymbolEntry | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, name: str, ty: TymType, kind: str, line: int) -> SymbolEntry:
        if name in BUILTINS:
            self.err("BuiltinShadow", f"'{name}' is a builtin and cannot be redeclared", line)
        scope = self.scopes[-1]
        if name in scope:
            self.err("DuplicateDecl", f"'{name}' already declared in this scope", line)
            return scope[name]
        entry = SymbolEntry(name, ty, self.next_slot, kind, line)
        self.next_slot += 1
        scope[name] = entry
        return entry

    def note_ret_use(self):
        if self.ret_first is None:
            self.ret_first = "use"

    def note_ret_def(self, event):
        if self.ret_first is None:
            self.ret_first = event

    def check_defined(self, entry: SymbolEntry, line: int, col: int, state: DirectiveState):
        if entry.defined:
            return
        msg = f"'{entry.name}' may be used before it is assigned"
        if state.no_init:
            self.err("UseBeforeDef", msg, line, col)
        else:
            self.warn("UseBeforeDef", msg, line, col)

    # ---- entry point ----

    def run(self) -> TypedProgram:
        for d in self.program.directives_prologue:
            if d.name not in KNOWN_DIRECTIVES:
                self.err("UnknownDirective", f"unknown directive '{d.name}'", d.line)
            else:
                self.activations.append((d.line, d.name))

        fn = self.program.function
        header_state = self.state_for(fn.line)
        self.scopes.append({})
        params: list[SymbolEntry] = []
        for pty, pname in fn.params:
            entry = self.declare(pname, pty, "param", fn.line)
            entry.define(fn.line)
            params.append(entry)
        self.ret_entry = self.declare(fn.return_var, fn.return_type, "retvar", fn.line)

        for st in fn.body:
            self.visit_stmt(st, depth=0)

        ret_top_decl = not isinstance(self.ret_first, ExprStmt)
        self.diags.sort(key=lambda d: (d.line, d.col, d.severity, d.code))
        return TypedProgram(
            program=self.program,
            filename=self.filename,
            diagnostics=self.diags,
            n_slots=self.next_slot,
            params=params,
            retvar=self.ret_entry,
            ret_top_decl=ret_top_decl,
            header_state=header_state,
        )

    # ---- statements ----

    def visit_stmt(self, st, depth: int):
        state = self.state_for(st.line)
        st.state = state
        if isinstance(st, DirectiveStmt):
            if st.name not in KNOWN_DIRECTIVES:
                self.err("UnknownDirective", f"unknown directive '{st.name}'", st.line)
            else:
                self.activations.append((st.line, st.name))
        elif isinstance(st, VarDecl):
            self.visit_vardecl(st, state)
        elif isinstance(st, Assign):
            self.visit_assign(st, state)
        elif isinstance(st, IndexedAssign):
            self.visit_indexed_assign(st, state)
        elif isinstance(st, ExprStmt):
            self.visit_expr_stmt(st, state, depth)
        elif isinstance(st, If):
            ct = self.visit_expr(st.cond, state)
            if ct is not None and ct.is_array:
                self.err("TypeMismatch", "condition must be a scalar", st.line)
            self.scopes.append({})
            for inner in st.then_body:
                self.visit_stmt(inner, depth + 1)
            self.scopes.pop()
            if st.else_body is not None:
                self.scopes.append({})
                for inner in st.else_body:
                    self.visit_stmt(inner, depth + 1)
                self.scopes.pop()
        elif isinstance(st, For):
            self.visit_for(st, state, depth)
        else:
            raise TypeError(f"unknown statement {st!r}")

    def visit_vardecl(self, st: VarDecl, state: DirectiveState):
        init_ty = None
        if st.init is not None:
            init_ty = self.visit_expr(st.init, state)
        entry = self.declare(st.name, st.ty, "local", st.line)
        st.sym = entry
        if st.init is not None:
            if init_ty is not None:
                if st.ty.is_array:
                    if init_ty != st.ty:
                        self.err(
                            "TypeMismatch",
                            f"cannot initialize {st.ty.value} '{st.name}' from {init_ty.value}",
                            st.line,
                        )
                else:
                    ok, narrow = _store_ok(st.ty, init_ty)
                    if not ok:
                        self.err(
                            "TypeMismatch",
                            f"cannot initialize {st.ty.value} '{st.name}' from {init_ty.value}",
                            st.line,
                        )
                    elif narrow:
                        self.warn(
                            "NarrowingStore",
                            f"storing {init_ty.value} value into int '{st.name}' truncates",
                            st.line,
                        )
            entry.define(st.line)
        elif st.ty.is_array:
            # arrays start out 0x0; that does not count as a definition
            entry.defined = False
        elif not state.no_init:
            # scalars zero-initialize unless suppressed
            entry.define(st.line)

    def visit_assign(self, st: Assign, state: DirectiveState):
        value_ty = self.visit_expr(st.value, state)
        entry = self.lookup(st.name)
        if entry is None:
            self.err("UseBeforeDecl", f"assignment to undeclared name '{st.name}'", st.line)
            return
        st.sym = entry
        if entry.ty.is_array:
            st.binding = not entry.defined
            if value_ty is not None and value_ty != entry.ty:
                what = "scalar" if value_ty in _SCALARS else value_ty.value
                self.err(
                    "TypeMismatch",
                    f"cannot assign {what} to {entry.ty.value} '{st.name}'",
                    st.line,
                )
        else:
            if value_ty is not None:
                ok, narrow = _store_ok(entry.ty, value_ty)
                if not ok:
                    self.err(
                        "TypeMismatch",
                        f"cannot assign {value_ty.value} to {entry.ty.value} '{st.name}'",
                        st.line,
                    )
                elif narrow:
                    self.warn(
                        "NarrowingStore",
                        f"storing {value_ty.value} value into int '{st.name}' truncates",
                        st.line,
                    )
        if entry is self.ret_entry:
            self.note_ret_def("def")
        entry.define(st.line)

    def visit_indexed_assign(self, st: IndexedAssign, state: DirectiveState):
        value_ty = self.visit_expr(st.value, state)
        entry = self.lookup(st.name)
        if entry is None:
            self.err("UseBeforeDecl", f"use of undeclared name '{st.name}'", st.line)
            return
        st.sym = entry
        if not entry.ty.is_array:
            self.err("NotIndexable", f"'{st.name}' is a scalar and cannot be indexed", st.line)
            return
        if entry is self.ret_entry:
            self.note_ret_use()
        self.check_defined(entry, st.line, 1, state)
        kind = self.visit_selectors(st.args, st.line, state)
        if kind is None:
            return
        elem = entry.ty.element
        if kind == "index":
            if value_ty is not None:
                ok, narrow = _store_ok(elem, value_ty)
                if not ok:
                    self.err(
                        "TypeMismatch",
                        f"cannot store {value_ty.value} into element of {entry.ty.value}",
                        st.line,
                    )
                elif narrow:
                    self.warn(
                        "NarrowingStore",
                        f"storing {value_ty.value} value into int element truncates",
                        st.line,
                    )
        else:
            if value_ty is not None and value_ty != entry.ty:
                what = "a scalar" if value_ty in _SCALARS else value_ty.value
                self.err(
                    "TypeMismatch",
                    f"cannot assign {what} to a slice of {entry.ty.value}",
                    st.line,
                )

    def visit_expr_stmt(self, st: ExprStmt, state: DirectiveState, depth: int):
        call = st.call
        if call.name == "error":
            call.resolved = "builtin"
            self.visit_error_call(call, state)
            return
        if call.name == "createArray":
            call.resolved = "builtin"
            self.visit_create_array(st, state, depth)
            return
        # rows(x) etc. on a line of its own has no effect; treat as a mistake
        ty = self.visit_expr(call, state)
        if ty is not None or call.resolved is not None:
            self.err(
                "TypeMismatch",
                "only error(...) and createArray(...) may stand alone as statements",
                st.line,
            )

    def visit_error_call(self, call: Apply, state: DirectiveState):
        if len(call.args) != 1 or not isinstance(call.args[0], ScalarArg):
            self.err("ArityMismatch", "error() takes exactly one message string", call.line, call.col)
            return
        msg = call.args[0].value
        if not isinstance(msg, StringLit):
            self.err("TypeMismatch", "error() message must be a string literal", call.line, call.col)

    def visit_create_array(self, st: ExprStmt, state: DirectiveState, depth: int):
        call = st.call
        if len(call.args) != 3:
            self.err(
                "ArityMismatch",
                "createArray() takes an array variable and exactly two dimensions",
                call.line,
                call.col,
            )
            return
        first = call.args[0]
        if not (isinstance(first, ScalarArg) and isinstance(first.value, Var)):
            self.err("TypeMismatch", "first argument of createArray() must be an array variable", call.line, call.col)
            return
        target = first.value
        entry = self.lookup(target.name)
        if entry is None:
            self.err("UseBeforeDecl", f"use of undeclared name '{target.name}'", call.line, call.col)
            return
        target.sym = entry
        call.sym = entry
        if not entry.ty.is_array:
            self.err("TypeMismatch", f"createArray() target '{target.name}' must be an array", call.line, call.col)
            return
        for arg in call.args[1:]:
            if not isinstance(arg, ScalarArg):
                self.err("TypeMismatch", "createArray() dimensions must be scalar ints", call.line, call.col)
                continue
            dty = self.visit_expr(arg.value, state)
            if dty is not None and dty is not TymType.INT:
                self.err("TypeMismatch", "createArray() dimensions must be scalar ints", call.line, call.col)
        if entry is self.ret_entry and depth == 0 and self.ret_first is None:
            st.decl_form = True
            self.note_ret_def(st)
        elif entry is self.ret_entry:
            self.note_ret_def("def")
        entry.define(st.line)

    def visit_for(self, st: For, state: DirectiveState, depth: int):
        entry = self.lookup(st.var)
        if entry is None:
            self.err("UseBeforeDecl", f"loop variable '{st.var}' is not declared", st.line)
        else:
            st.sym = entry
            if entry.ty is not TymType.INT:
                self.err("TypeMismatch", f"loop variable '{st.var}' must be an int", st.line)
        self.visit_range(st.bounds, state, context="loop")
        step = st.bounds.step
        if step is not None:
            lit = literal_int(step)
            if lit == 0:
                self.err("InvalidLoopStep", "loop step must not be zero", st.line)
        if entry is not None:
            # the loop assigns its start value even when the body never runs
            if entry is self.ret_entry:
                self.note_ret_def("def")
            entry.define(st.line)
        self.scopes.append({})
        for inner in st.body:
            self.visit_stmt(inner, depth + 1)
        self.scopes.pop()

    # ---- expressions ----

    def visit_expr(self, e: Expr, state: DirectiveState) -> TymType | None:
        if isinstance(e, IntLit):
            if not (INT_MIN <= e.value <= INT_MAX):
                self.warn("LiteralRange", f"integer literal {e.value} saturates to the int range", e.line, e.col)
            e.ty = TymType.INT
            return e.ty
        if isinstance(e, RealLit):
            e.ty = TymType.REAL
            return e.ty
        if isinstance(e, StringLit):
            self.err("TypeMismatch", "string literal is only allowed as an error() message", e.line, e.col)
            return None
        if isinstance(e, Var):
            if e.name in BUILTINS:
                self.err("TypeMismatch", f"builtin '{e.name}' must be called", e.line, e.col)
                return None
            entry = self.lookup(e.name)
            if entry is None:
                self.err("UseBeforeDecl", f"use of undeclared name '{e.name}'", e.line, e.col)
                return None
            e.sym = entry
            if entry is self.ret_entry:
                self.note_ret_use()
            self.check_defined(entry, e.line, e.col, state)
            e.ty = entry.ty
            return e.ty
        if isinstance(e, UnaryOp):
            ot = self.visit_expr(e.operand, state)
            if ot is None:
                return None
            e.ty = ot
            return ot
        if isinstance(e, BinOp):
            return self.visit_binop(e, state)
        if isinstance(e, Apply):
            return self.visit_apply(e, state)
        if isinstance(e, RangeExpr):
            self.err("TypeMismatch", "a range is only allowed in loop bounds and slices", e.line, e.col)
            return None
        raise TypeError(f"unknown expression {e!r}")

    def visit_binop(self, e: BinOp, state: DirectiveState) -> TymType | None:
        lt = self.visit_expr(e.lhs, state)
        rt = self.visit_expr(e.rhs, state)
        if lt is None or rt is None:
            return None
        if e.op in ("+", "-", "*", "/"):
            res = _combine_arith(lt, rt)
            if res is None:
                self.err(
                    "TypeMismatch",
                    f"invalid operands to '{e.op}' ({lt.value} and {rt.value})",
                    e.line,
                    e.col,
                )
                return None
            e.ty = res
            return res
        # comparisons and logical connectives work on scalars only
        if lt.is_array or rt.is_array:
            self.err("TypeMismatch", f"'{e.op}' requires scalar operands", e.line, e.col)
            return None
        e.ty = TymType.INT
        return e.ty

    def visit_range(self, r: RangeExpr, state: DirectiveState, context: str):
        parts = [r.start, r.stop] if r.step is None else [r.start, r.step, r.stop]
        for part in parts:
            pty = self.visit_expr(part, state)
            if pty is not None and pty is not TymType.INT:
                what = "loop bounds" if context == "loop" else "slice bounds"
                self.err("TypeMismatch", f"{what} must be scalar ints", part.line, getattr(part, "col", 1))
        r.ty = TymType.INT

    def visit_selectors(self, args, line: int, state: DirectiveState) -> str | None:
        """Classify an index argument list: 'index' | 'slice' | None on error."""
        if not 1 <= len(args) <= 2:
            self.err("ArityMismatch", "arrays take one or two subscripts", line)
            return None
        any_slice = False
        for arg in args:
            if isinstance(arg, ColonArg):
                any_slice = True
            elif isinstance(arg, SliceArg):
                any_slice = True
                self.visit_range(arg.range, state, context="slice")
                step = arg.range.step
                if step is not None:
                    lit = literal_int(step)
                    if lit is not None and lit <= 0:
                        self.err("InvalidSliceStep", "slice step must be a positive int", line)
            else:
                sty = self.visit_expr(arg.value, state)
                if sty is not None and sty is not TymType.INT:
                    self.err("TypeMismatch", "subscripts must be scalar ints", line)
        return "slice" if any_slice else "index"

    def visit_apply(self, e: Apply, state: DirectiveState) -> TymType | None:
        if e.name in ("rows", "columns"):
            e.resolved = "builtin"
            if len(e.args) != 1 or not isinstance(e.args[0], ScalarArg):
                self.err("ArityMismatch", f"{e.name}() takes exactly one array argument", e.line, e.col)
                return None
            aty = self.visit_expr(e.args[0].value, state)
            if aty is not None and not aty.is_array:
                self.err("TypeMismatch", f"{e.name}() argument must be an array", e.line, e.col)
                return None
            e.ty = TymType.INT
            return e.ty
        if e.name in ("error", "createArray"):
            # statement-position handling lives in visit_expr_stmt
            self.err("TypeMismatch", f"{e.name}() cannot be used in an expression", e.line, e.col)
            return None
        entry = self.lookup(e.name)
        if entry is None:
            self.err("UseBeforeDecl", f"use of undeclared name '{e.name}'", e.line, e.col)
            return None
        e.sym = entry
        if not entry.ty.is_array:
            self.err("NotIndexable", f"'{e.name}' is a scalar and cannot be indexed", e.line, e.col)
            return None
        if entry is self.ret_entry:
            self.note_ret_use()
        self.check_defined(entry, e.line, e.col, state)
        kind = self.visit_selectors(e.args, e.line, state)
        if kind is None:
            return None
        e.resolved = kind
        e.ty = entry.ty.element if kind == "index" else entry.ty
        return e.ty


def analyze(program: Program, filename: str = "<input>") -> TypedProgram:
    return _Analyzer(program, filename).run()


def directive_state_at(program: Program, line: int) -> DirectiveState:
    """Directive flags in force at a line: every toggle strictly above it."""
    state = DirectiveState()
    acts: list[tuple[int, str]] = []
    for d in program.directives_prologue:
        if d.name in KNOWN_DIRECTIVES:
            acts.append((d.line, d.name))
    for st in walk_stmts(program.function.body):
        if isinstance(st, DirectiveStmt) and st.name in KNOWN_DIRECTIVES:
            acts.append((st.line, st.name))
    for aline, name in acts:
        if aline < line:
            state = replace(state, **{_DIRECTIVE_FIELD[name]: True})
    return state
