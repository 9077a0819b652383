"""Pipeline orchestration shared by the command line and the harnesses.

Wraps lexer → parser → sema → codegen behind a small API that reports every
problem as rendered diagnostic lines, so callers never juggle the raised
vs. collected styles of the individual stages.
"""
from __future__ import annotations

from pathlib import Path

from .codegen import LoweredModule, emit_module
from .diagnostics import TymError
from .lexer import tokenize
from .parser import parse
from .sema import TypedProgram, analyze


class CompileFailure(Exception):
    """Analysis stopped: carries the rendered diagnostic lines."""

    def __init__(self, lines: list[str]):
        super().__init__("\n".join(lines))
        self.lines = list(lines)


def analyze_text(source: str, filename: str = "<input>") -> TypedProgram:
    """Run the front half of the pipeline.

    Raises CompileFailure if any stage reports an error; warnings stay on
    the returned program's diagnostics list for the caller to surface.
    """
    try:
        tp = analyze(parse(tokenize(source)), filename)
    except TymError as e:
        raise CompileFailure([e.diag.render(filename)]) from e
    if tp.has_errors:
        raise CompileFailure(tp.rendered())
    return tp


def analyze_file(path: str | Path) -> TypedProgram:
    p = Path(path)
    return analyze_text(p.read_text(), str(p))


def stem_mismatch(path: str | Path, tp: TypedProgram) -> str | None:
    """Warning text when the file stem differs from the function name."""
    name = tp.program.function.name
    stem = Path(path).stem
    if stem != name:
        return f"{path}: file stem {stem!r} does not match function name {name!r}"
    return None


def compile_file(path: str | Path, target: str) -> tuple[TypedProgram, LoweredModule]:
    tp = analyze_file(path)
    return tp, emit_module(tp, target)


def write_module(mod: LoweredModule, out_dir: str | Path) -> Path:
    """Write the emitted translation unit as `<function>.cpp`."""
    out = Path(out_dir) / f"{mod.function_name}.cpp"
    out.write_text(mod.source_text)
    return out
