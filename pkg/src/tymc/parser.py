"""Recursive descent parser for tym, plus a canonical source printer.

print_ast(parse(src)) re-parses to a structurally equal Program, which is what
the round-trip property test leans on.
"""
from __future__ import annotations

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
    IndexArg,
    IndexedAssign,
    IntLit,
    PrologueDirective,
    Program,
    RangeExpr,
    RealLit,
    ScalarArg,
    SliceArg,
    Stmt,
    StringLit,
    TymType,
    UnaryOp,
    Var,
    VarDecl,
)
from .diagnostics import TymError, error
from .lexer import Token, TokenKind, directive_name, string_value, tokenize

_TYPE_BY_KIND = {
    TokenKind.T_INT: TymType.INT,
    TokenKind.T_REAL: TymType.REAL,
    TokenKind.T_FLOAT: TymType.FLOAT,
    TokenKind.T_INT_ARRAY: TymType.INT_ARRAY,
    TokenKind.T_REAL_ARRAY: TymType.REAL_ARRAY,
}

# binary operator precedence, loosest first
_BINOP_LEVELS = [
    ("||",),
    ("&&",),
    ("==", "~=", "<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/"),
]

_OP_KINDS = {
    TokenKind.OROR: "||",
    TokenKind.ANDAND: "&&",
    TokenKind.EQ: "==",
    TokenKind.NE: "~=",
    TokenKind.LT: "<",
    TokenKind.LE: "<=",
    TokenKind.GT: ">",
    TokenKind.GE: ">=",
    TokenKind.PLUS: "+",
    TokenKind.MINUS: "-",
    TokenKind.STAR: "*",
    TokenKind.SLASH: "/",
}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # ---- token plumbing ----

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[i]

    def at(self, kind: TokenKind) -> bool:
        return self.peek().kind == kind

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            self.fail(f"expected {what}, found '{tok.text or '<eof>'}'", tok)
        return self.advance()

    def fail(self, message: str, tok: Token):
        raise TymError(error("ParseError", message, tok.line, tok.col))

    def skip_newlines(self):
        while self.at(TokenKind.NEWLINE):
            self.advance()

    def end_of_stmt(self):
        tok = self.peek()
        if tok.kind is TokenKind.EOF:
            return
        if tok.kind is not TokenKind.NEWLINE:
            self.fail(f"expected end of statement, found '{tok.text}'", tok)
        self.advance()

    # ---- program structure ----

    def parse_program(self) -> Program:
        prologue: list[PrologueDirective] = []
        self.skip_newlines()
        while self.at(TokenKind.DIRECTIVE):
            tok = self.advance()
            prologue.append(PrologueDirective(directive_name(tok), line=tok.line))
            self.end_of_stmt()
            self.skip_newlines()
        fn = self.parse_function()
        self.skip_newlines()
        if not self.at(TokenKind.EOF):
            self.fail("only one function per file", self.peek())
        return Program(prologue, fn)

    def parse_function(self) -> FunctionDef:
        kw = self.expect(TokenKind.FUNCTION, "'function'")
        rtok = self.peek()
        rtype = _TYPE_BY_KIND.get(rtok.kind)
        if rtype is None:
            self.fail("expected return type", rtok)
        self.advance()
        rvar = self.expect(TokenKind.IDENT, "return variable name").text
        self.expect(TokenKind.ASSIGN, "'='")
        name = self.expect(TokenKind.IDENT, "function name").text
        self.expect(TokenKind.LPAREN, "'('")
        params: list[tuple[TymType, str]] = []
        if not self.at(TokenKind.RPAREN):
            while True:
                ptok = self.peek()
                ptype = _TYPE_BY_KIND.get(ptok.kind)
                if ptype is None:
                    self.fail("expected parameter type", ptok)
                self.advance()
                pname = self.expect(TokenKind.IDENT, "parameter name").text
                params.append((ptype, pname))
                if self.at(TokenKind.COMMA):
                    self.advance()
                    continue
                break
        self.expect(TokenKind.RPAREN, "')'")
        self.end_of_stmt()
        body = self.parse_body()
        self.expect(TokenKind.END, "'end'")
        return FunctionDef(rtype, rvar, name, params, body, line=kw.line)

    def parse_body(self) -> list[Stmt]:
        out: list[Stmt] = []
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind in (TokenKind.END, TokenKind.ELSE, TokenKind.EOF):
                return out
            out.append(self.parse_stmt())

    # ---- statements ----

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        if tok.kind is TokenKind.DIRECTIVE:
            self.advance()
            st = DirectiveStmt(directive_name(tok), line=tok.line)
            self.end_of_stmt()
            return st
        ty = _TYPE_BY_KIND.get(tok.kind)
        if ty is not None:
            return self.parse_vardecl(ty)
        if tok.kind is TokenKind.IF:
            return self.parse_if()
        if tok.kind is TokenKind.FOR:
            return self.parse_for()
        if tok.kind is TokenKind.IDENT:
            return self.parse_ident_stmt()
        self.fail(f"expected statement, found '{tok.text or '<eof>'}'", tok)

    def parse_vardecl(self, ty: TymType) -> VarDecl:
        tok = self.advance()
        name = self.expect(TokenKind.IDENT, "variable name").text
        init = None
        if self.at(TokenKind.ASSIGN):
            self.advance()
            init = self.parse_expr()
        st = VarDecl(ty, name, init, line=tok.line)
        self.end_of_stmt()
        return st

    def parse_if(self) -> If:
        tok = self.advance()
        self.expect(TokenKind.LPAREN, "'(' after 'if'")
        cond = self.parse_expr()
        self.expect(TokenKind.RPAREN, "')'")
        self.end_of_stmt()
        then_body = self.parse_body()
        else_body = None
        if self.at(TokenKind.ELSE):
            self.advance()
            self.end_of_stmt()
            else_body = self.parse_body()
        self.expect(TokenKind.END, "'end'")
        st = If(cond, then_body, else_body, line=tok.line)
        self.end_of_stmt()
        return st

    def parse_for(self) -> For:
        tok = self.advance()
        var = self.expect(TokenKind.IDENT, "loop variable").text
        self.expect(TokenKind.ASSIGN, "'='")
        bounds = self.parse_range(require_range=True)
        self.end_of_stmt()
        body = self.parse_body()
        self.expect(TokenKind.END, "'end'")
        st = For(var, bounds, body, line=tok.line)
        self.end_of_stmt()
        return st

    def parse_ident_stmt(self) -> Stmt:
        tok = self.advance()
        name = tok.text
        if self.at(TokenKind.ASSIGN):
            self.advance()
            value = self.parse_expr()
            st = Assign(name, value, line=tok.line)
            self.end_of_stmt()
            return st
        if self.at(TokenKind.LPAREN):
            args = self.parse_index_args()
            if self.at(TokenKind.ASSIGN):
                self.advance()
                value = self.parse_expr()
                st = IndexedAssign(name, args, value, line=tok.line)
                self.end_of_stmt()
                return st
            call = Apply(name, args, line=tok.line, col=tok.col)
            st = ExprStmt(call, line=tok.line)
            self.end_of_stmt()
            return st
        self.fail(f"expected '=' or '(' after '{name}'", self.peek())

    # ---- expressions ----

    def parse_expr(self, level: int = 0) -> Expr:
        if level >= len(_BINOP_LEVELS):
            return self.parse_unary()
        ops = _BINOP_LEVELS[level]
        lhs = self.parse_expr(level + 1)
        while True:
            op = _OP_KINDS.get(self.peek().kind)
            if op is None or op not in ops:
                return lhs
            tok = self.advance()
            rhs = self.parse_expr(level + 1)
            lhs = BinOp(op, lhs, rhs, line=tok.line, col=tok.col)

    def parse_unary(self) -> Expr:
        if self.at(TokenKind.MINUS):
            tok = self.advance()
            operand = self.parse_unary()
            return UnaryOp("-", operand, line=tok.line, col=tok.col)
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind is TokenKind.INT_LIT:
            self.advance()
            return IntLit(int(tok.text), line=tok.line, col=tok.col)
        if tok.kind is TokenKind.REAL_LIT:
            self.advance()
            return RealLit(float(tok.text), text=tok.text, line=tok.line, col=tok.col)
        if tok.kind is TokenKind.STRING_LIT:
            self.advance()
            return StringLit(string_value(tok), line=tok.line, col=tok.col)
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_expr()
            self.expect(TokenKind.RPAREN, "')'")
            return inner
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if self.at(TokenKind.LPAREN):
                args = self.parse_index_args()
                return Apply(tok.text, args, line=tok.line, col=tok.col)
            return Var(tok.text, line=tok.line, col=tok.col)
        self.fail(f"expected expression, found '{tok.text or '<eof>'}'", tok)

    def parse_range(self, require_range: bool) -> RangeExpr | Expr:
        first = self.parse_expr()
        if not self.at(TokenKind.COLON):
            if require_range:
                self.fail("expected ':' in loop range", self.peek())
            return first
        ctok = self.advance()
        second = self.parse_expr()
        if self.at(TokenKind.COLON):
            self.advance()
            third = self.parse_expr()
            return RangeExpr(first, second, third, line=ctok.line, col=ctok.col)
        return RangeExpr(first, None, second, line=ctok.line, col=ctok.col)

    def parse_index_args(self) -> list[IndexArg]:
        self.expect(TokenKind.LPAREN, "'('")
        args: list[IndexArg] = []
        if self.at(TokenKind.RPAREN):
            self.advance()
            return args
        while True:
            args.append(self.parse_index_arg())
            if self.at(TokenKind.COMMA):
                self.advance()
                continue
            break
        self.expect(TokenKind.RPAREN, "')'")
        return args

    def parse_index_arg(self) -> IndexArg:
        if self.at(TokenKind.COLON):
            nxt = self.peek(1)
            if nxt.kind in (TokenKind.COMMA, TokenKind.RPAREN):
                self.advance()
                return ColonArg()
            self.fail("expected ',' or ')' after ':'", nxt)
        parsed = self.parse_range(require_range=False)
        if isinstance(parsed, RangeExpr):
            return SliceArg(parsed)
        return ScalarArg(parsed)


def parse(tokens: list[Token]) -> Program:
    return _Parser(tokens).parse_program()


def parse_source(source: str) -> Program:
    return _Parser(tokenize(source)).parse_program()


# --------------------------------------------------------------------------
# canonical printer

_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3, "~=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5,
}
_UNARY_PREC = 6


def canonical_real(value: float) -> str:
    text = repr(value)
    if "e" in text or "E" in text:
        mantissa, _, exp = text.partition("e")
        if "." not in mantissa:
            mantissa += ".0"
        return f"{mantissa}e{exp}"
    if "." not in text:
        text += ".0"
    return text


def _fmt_expr(e: Expr, parent_prec: int = 0, right_side: bool = False) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, RealLit):
        return e.text if e.text else canonical_real(e.value)
    if isinstance(e, StringLit):
        return f"'{e.value}'"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Apply):
        return f"{e.name}({', '.join(_fmt_index_arg(a) for a in e.args)})"
    if isinstance(e, UnaryOp):
        inner = e.operand
        if isinstance(inner, (BinOp, UnaryOp)):
            text = f"-({_fmt_expr(inner)})"
        else:
            text = f"-{_fmt_expr(inner)}"
        if parent_prec > _UNARY_PREC or (right_side and parent_prec == _UNARY_PREC):
            return f"({text})"
        return text
    if isinstance(e, BinOp):
        prec = _PREC[e.op]
        lhs = _fmt_expr(e.lhs, prec, right_side=False)
        rhs = _fmt_expr(e.rhs, prec, right_side=True)
        text = f"{lhs} {e.op} {rhs}"
        if prec < parent_prec or (right_side and prec == parent_prec):
            return f"({text})"
        return text
    if isinstance(e, RangeExpr):
        return _fmt_range(e)
    raise TypeError(f"unknown expression node {e!r}")


def _fmt_range(r: RangeExpr) -> str:
    if r.step is None:
        return f"{_fmt_expr(r.start)}:{_fmt_expr(r.stop)}"
    return f"{_fmt_expr(r.start)}:{_fmt_expr(r.step)}:{_fmt_expr(r.stop)}"


def _fmt_index_arg(arg: IndexArg) -> str:
    if isinstance(arg, ColonArg):
        return ":"
    if isinstance(arg, SliceArg):
        return _fmt_range(arg.range)
    return _fmt_expr(arg.value)


def _fmt_stmt(st: Stmt, indent: int, out: list[str]):
    pad = "  " * indent
    if isinstance(st, DirectiveStmt):
        out.append(f"{pad}$ '{st.name}'")
    elif isinstance(st, VarDecl):
        if st.init is None:
            out.append(f"{pad}{st.ty.value} {st.name}")
        else:
            out.append(f"{pad}{st.ty.value} {st.name} = {_fmt_expr(st.init)}")
    elif isinstance(st, Assign):
        out.append(f"{pad}{st.name} = {_fmt_expr(st.value)}")
    elif isinstance(st, IndexedAssign):
        args = ", ".join(_fmt_index_arg(a) for a in st.args)
        out.append(f"{pad}{st.name}({args}) = {_fmt_expr(st.value)}")
    elif isinstance(st, ExprStmt):
        out.append(f"{pad}{_fmt_expr(st.call)}")
    elif isinstance(st, If):
        out.append(f"{pad}if ({_fmt_expr(st.cond)})")
        for inner in st.then_body:
            _fmt_stmt(inner, indent + 1, out)
        if st.else_body is not None:
            out.append(f"{pad}else")
            for inner in st.else_body:
                _fmt_stmt(inner, indent + 1, out)
        out.append(f"{pad}end")
    elif isinstance(st, For):
        out.append(f"{pad}for {st.var} = {_fmt_range(st.bounds)}")
        for inner in st.body:
            _fmt_stmt(inner, indent + 1, out)
        out.append(f"{pad}end")
    else:
        raise TypeError(f"unknown statement node {st!r}")


def print_ast(program: Program) -> str:
    out: list[str] = []
    for d in program.directives_prologue:
        out.append(f"$ '{d.name}'")
    fn = program.function
    params = ", ".join(f"{t.value} {n}" for t, n in fn.params)
    out.append(
        f"function {fn.return_type.value} {fn.return_var} = {fn.name}({params})"
    )
    for st in fn.body:
        _fmt_stmt(st, 1, out)
    out.append("end")
    return "\n".join(out) + "\n"
