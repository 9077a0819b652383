"""AST node definitions for tym programs.

Positions (line/col) and sema annotations are excluded from equality so two
programs compare structurally: parse(print_ast(p)) == p regardless of layout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class TymType(Enum):
    INT = "int"
    REAL = "real"
    FLOAT = "float"
    INT_ARRAY = "intArray"
    REAL_ARRAY = "realArray"

    @property
    def is_array(self) -> bool:
        return self in (TymType.INT_ARRAY, TymType.REAL_ARRAY)

    @property
    def element(self) -> "TymType":
        return _ELEMENT[self]


_ELEMENT = {TymType.INT_ARRAY: TymType.INT, TymType.REAL_ARRAY: TymType.REAL}


def _pos_field():
    return field(default=0, compare=False)


def _anno_field():
    return field(default=None, compare=False, repr=False)


# --------------------------------------------------------------------------
# expressions

@dataclass
class IntLit:
    value: int
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class RealLit:
    value: float
    text: str = field(default="", compare=False)  # source spelling, kept for emission
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class StringLit:
    value: str
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class Var:
    name: str
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()
    sym: Optional["object"] = _anno_field()


@dataclass
class BinOp:
    op: str  # + - * / == ~= < <= > >= && ||
    lhs: "Expr"
    rhs: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class UnaryOp:
    op: str  # -
    operand: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class RangeExpr:
    start: "Expr"
    step: Optional["Expr"]
    stop: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()


@dataclass
class ScalarArg:
    value: "Expr"


@dataclass
class SliceArg:
    range: RangeExpr


@dataclass
class ColonArg:
    pass


IndexArg = Union[ScalarArg, SliceArg, ColonArg]


@dataclass
class Apply:
    """Either an array index/slice or a builtin call; sema decides which."""
    name: str
    args: list[IndexArg]
    line: int = _pos_field()
    col: int = _pos_field()
    ty: Optional[TymType] = _anno_field()
    sym: Optional["object"] = _anno_field()
    resolved: Optional[str] = _anno_field()  # "index" | "slice" | "builtin"


Expr = Union[IntLit, RealLit, StringLit, Var, BinOp, UnaryOp, RangeExpr, Apply]


# --------------------------------------------------------------------------
# statements

@dataclass
class VarDecl:
    ty: TymType
    name: str
    init: Optional[Expr]
    line: int = _pos_field()
    sym: Optional["object"] = _anno_field()
    state: Optional["object"] = _anno_field()


@dataclass
class Assign:
    name: str
    value: Expr
    line: int = _pos_field()
    sym: Optional["object"] = _anno_field()
    state: Optional["object"] = _anno_field()
    binding: bool = field(default=False, compare=False, repr=False)


@dataclass
class IndexedAssign:
    name: str
    args: list[IndexArg]
    value: Expr
    line: int = _pos_field()
    sym: Optional["object"] = _anno_field()
    state: Optional["object"] = _anno_field()


@dataclass
class If:
    cond: Expr
    then_body: list["Stmt"]
    else_body: Optional[list["Stmt"]]
    line: int = _pos_field()
    state: Optional["object"] = _anno_field()


@dataclass
class For:
    var: str
    bounds: RangeExpr
    body: list["Stmt"]
    line: int = _pos_field()
    sym: Optional["object"] = _anno_field()
    state: Optional["object"] = _anno_field()


@dataclass
class ExprStmt:
    call: Apply
    line: int = _pos_field()
    state: Optional["object"] = _anno_field()
    # set by sema when a createArray statement doubles as the C++ declaration
    decl_form: bool = field(default=False, compare=False, repr=False)


@dataclass
class DirectiveStmt:
    name: str
    line: int = _pos_field()
    state: Optional["object"] = _anno_field()


Stmt = Union[VarDecl, Assign, IndexedAssign, If, For, ExprStmt, DirectiveStmt]


# --------------------------------------------------------------------------
# program

@dataclass
class PrologueDirective:
    name: str
    line: int = _pos_field()


@dataclass
class FunctionDef:
    return_type: TymType
    return_var: str
    name: str
    params: list[tuple[TymType, str]]
    body: list[Stmt]
    line: int = _pos_field()


@dataclass
class Program:
    directives_prologue: list[PrologueDirective]
    function: FunctionDef


def walk_stmts(body: list[Stmt]):
    """Yield every statement in source order, descending into blocks."""
    for st in body:
        yield st
        if isinstance(st, If):
            yield from walk_stmts(st.then_body)
            if st.else_body is not None:
                yield from walk_stmts(st.else_body)
        elif isinstance(st, For):
            yield from walk_stmts(st.body)
