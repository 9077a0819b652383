"""Tokenizer for tym source text.

Line oriented: comments run from % to end of line, a statement ends at a
newline (or a `;`, which is folded into the same Newline token stream), and
directive lines start with `$` followed by a single-quoted name.  Consecutive
blank lines collapse into one Newline token and a final Newline is always
present before EndOfFile when the source contains any token at all.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, auto

from .diagnostics import TymError, error


class TokenKind(Enum):
    IDENT = auto()
    INT_LIT = auto()
    REAL_LIT = auto()
    STRING_LIT = auto()
    DIRECTIVE = auto()
    # keywords
    FUNCTION = auto()
    END = auto()
    IF = auto()
    ELSE = auto()
    FOR = auto()
    # type keywords
    T_INT = auto()
    T_REAL = auto()
    T_FLOAT = auto()
    T_INT_ARRAY = auto()
    T_REAL_ARRAY = auto()
    # operators and punctuation
    PLUS = auto()
    MINUS = auto()
    STAR = auto()
    SLASH = auto()
    ASSIGN = auto()
    EQ = auto()
    NE = auto()
    LT = auto()
    LE = auto()
    GT = auto()
    GE = auto()
    OROR = auto()
    ANDAND = auto()
    COLON = auto()
    COMMA = auto()
    LPAREN = auto()
    RPAREN = auto()
    NEWLINE = auto()
    EOF = auto()


TYPE_KEYWORDS = {
    "int": TokenKind.T_INT,
    "real": TokenKind.T_REAL,
    "float": TokenKind.T_FLOAT,
    "intArray": TokenKind.T_INT_ARRAY,
    "realArray": TokenKind.T_REAL_ARRAY,
}

KEYWORDS = {
    "function": TokenKind.FUNCTION,
    "end": TokenKind.END,
    "if": TokenKind.IF,
    "else": TokenKind.ELSE,
    "for": TokenKind.FOR,
    **TYPE_KEYWORDS,
}

_OPERATORS = {
    "==": TokenKind.EQ,
    "~=": TokenKind.NE,
    "<=": TokenKind.LE,
    ">=": TokenKind.GE,
    "||": TokenKind.OROR,
    "&&": TokenKind.ANDAND,
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "/": TokenKind.SLASH,
    "=": TokenKind.ASSIGN,
    "<": TokenKind.LT,
    ">": TokenKind.GT,
    ":": TokenKind.COLON,
    ",": TokenKind.COMMA,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    col: int


_PIECES = [
    ("COMMENT", r"%[^\n]*"),
    ("WS", r"[ \t\r]+"),
    ("REAL", r"\d+\.\d+(?:[eE][+-]?\d+)?"),
    ("INT", r"\d+"),
    ("STRING", r"'[^'\n]*'"),
    ("BADSTRING", r"'[^'\n]*"),
    ("OP", r"==|~=|<=|>=|\|\||&&|[+\-*/=<>:,()]"),
    ("SEMI", r";"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _PIECES))

_DIRECTIVE = re.compile(r"\$[ \t]*'([^'\n]*)'")


def directive_name(tok: Token) -> str:
    """Extract the quoted name carried by a Directive token."""
    m = _DIRECTIVE.match(tok.text)
    assert m is not None
    return m.group(1)


def string_value(tok: Token) -> str:
    return tok.text[1:-1]


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []

    def emit_newline(line: int, col: int, text: str = "\n") -> None:
        # blank lines and repeated terminators collapse into one Newline
        if toks and toks[-1].kind is not TokenKind.NEWLINE:
            toks.append(Token(TokenKind.NEWLINE, text, line, col))

    for ln, line in enumerate(source.split("\n"), 1):
        pos = 0
        stripped = line.lstrip(" \t")
        if stripped.startswith("$"):
            dollar_col = len(line) - len(stripped)
            m = _DIRECTIVE.match(line, dollar_col)
            if m is None:
                raise TymError(error(
                    "MalformedDirective",
                    "expected a single-quoted directive name after '$'",
                    ln, dollar_col + 1))
            toks.append(Token(TokenKind.DIRECTIVE, m.group(0), ln, dollar_col + 1))
            pos = m.end()
        while pos < len(line):
            m = _MASTER.match(line, pos)
            if m is None:
                raise TymError(error(
                    "IllegalCharacter",
                    f"illegal character {line[pos]!r}",
                    ln, pos + 1))
            kind = m.lastgroup
            text = m.group(0)
            col = pos + 1
            pos = m.end()
            if kind in ("WS", "COMMENT"):
                continue
            if kind == "BADSTRING":
                raise TymError(error(
                    "UnterminatedString", "unterminated string literal", ln, col))
            if kind == "SEMI":
                emit_newline(ln, col, text)
            elif kind == "OP":
                toks.append(Token(_OPERATORS[text], text, ln, col))
            elif kind == "INT":
                toks.append(Token(TokenKind.INT_LIT, text, ln, col))
            elif kind == "REAL":
                toks.append(Token(TokenKind.REAL_LIT, text, ln, col))
            elif kind == "STRING":
                toks.append(Token(TokenKind.STRING_LIT, text, ln, col))
            elif kind == "IDENT":
                toks.append(Token(KEYWORDS.get(text, TokenKind.IDENT), text, ln, col))
        emit_newline(ln, len(line) + 1)

    last_line = source.count("\n") + 1
    toks.append(Token(TokenKind.EOF, "", last_line, len(source.split("\n")[-1]) + 1))
    return toks
