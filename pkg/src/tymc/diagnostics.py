"""Diagnostic records shared by every stage of the tymc pipeline.

Every user-facing problem is a Diagnostic with a stable code, a severity,
and a 1-based source position.  Stages that cannot continue (lexer, parser)
raise TymError around a single Diagnostic; sema collects a list instead.
"""
from __future__ import annotations

from dataclasses import dataclass

SEV_ERROR = "error"
SEV_WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    line: int
    col: int

    def render(self, filename: str = "<source>") -> str:
        return f"{filename}:{self.line}:{self.col}: {self.severity}: {self.code}: {self.message}"


class TymError(Exception):
    """Raised by stages that stop at the first problem."""

    def __init__(self, diag: Diagnostic):
        super().__init__(diag.render())
        self.diag = diag


def error(code: str, message: str, line: int, col: int) -> Diagnostic:
    return Diagnostic(SEV_ERROR, code, message, line, col)


def warning(code: str, message: str, line: int, col: int) -> Diagnostic:
    return Diagnostic(SEV_WARNING, code, message, line, col)
