"""Build and execute compiled programs, and mirror them in the interpreter.

Both execution paths speak the same externally visible protocol so they can
be compared byte for byte:

    stdout   the returned value (scalar line, or `array <rows> <cols>`
             followed by row-major lines)
    stderr   `error: <message>` when the program stops early
    exit     0 normal, 2 runtime error

Compiled binaries take the argument file path as argv[1] and an optional
repeat count as argv[2] (used by the benchmark; timing goes to stderr).
"""
from __future__ import annotations

import os
import subprocess
from pathlib import Path

from .argsfile import ArgsError, coerce_args, parse_args_file
from .interp import ExecResult, Fault, compile_program, format_value
from .sema import TypedProgram

DEFAULT_CXX = "c++"
CXX_FLAGS = ("-std=c++17", "-O2")

RUNTIME_HEADER = "tym_runtime.hpp"
RUNTIME_ENV = "TYM_RUNTIME_INCLUDE"


class BuildFailure(Exception):
    """The C++ toolchain failed; the message carries its output."""


def find_runtime_include(explicit: str | Path | None = None) -> Path:
    """Locate the directory holding the support header.

    Order: explicit flag, then the TYM_RUNTIME_INCLUDE environment
    variable, then a walk upward from this package looking for
    `runtime/include/` (the layout used by the sibling runtime project).
    """
    if explicit is not None:
        p = Path(explicit)
        if (p / RUNTIME_HEADER).is_file():
            return p
        raise BuildFailure(f"{RUNTIME_HEADER} not found in {p}")
    env = os.environ.get(RUNTIME_ENV)
    if env:
        p = Path(env)
        if (p / RUNTIME_HEADER).is_file():
            return p
        raise BuildFailure(f"{RUNTIME_HEADER} not found in ${RUNTIME_ENV}={env}")
    here = Path(__file__).resolve()
    for base in here.parents:
        cand = base / "runtime" / "include"
        if (cand / RUNTIME_HEADER).is_file():
            return cand
    raise BuildFailure(
        f"{RUNTIME_HEADER} not found; pass --runtime-include or set ${RUNTIME_ENV}"
    )


def build_binary(
    cpp_path: str | Path,
    out_path: str | Path,
    cxx: str = DEFAULT_CXX,
    include_dir: str | Path | None = None,
) -> Path:
    include = find_runtime_include(include_dir)
    cmd = [cxx, *CXX_FLAGS, "-I", str(include), str(cpp_path), "-o", str(out_path)]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True)
    except FileNotFoundError as e:
        raise BuildFailure(f"C++ compiler not found: {cxx}") from e
    if proc.returncode != 0:
        raise BuildFailure(
            f"build failed ({' '.join(cmd)}):\n{proc.stdout}{proc.stderr}"
        )
    return Path(out_path)


def run_binary(
    binary: str | Path,
    args_path: str | Path,
    repeats: int | None = None,
    timeout: float = 600.0,
) -> subprocess.CompletedProcess:
    cmd = [str(binary), str(args_path)]
    if repeats is not None:
        cmd.append(str(repeats))
    return subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)


def interp_result(tp: TypedProgram, args: list) -> ExecResult:
    return compile_program(tp).run(args)


def interp_streams(tp: TypedProgram, args: list) -> tuple[str, str, int]:
    """Interpreter run rendered in the shared stdout/stderr/exit protocol."""
    try:
        result = interp_result(tp, args)
    except Fault as f:
        return "", f"error: {f.message}\n", 2
    if result.exit == "error-return":
        return "", f"error: {result.message}\n", 2
    return format_value(result.value), "", 0


def interp_args_text(tp: TypedProgram, args_text: str) -> tuple[str, str, int]:
    """Parse an argument file's text, coerce to the signature, interpret."""
    try:
        args = coerce_args(parse_args_file(args_text), tp.params)
    except ArgsError as e:
        return "", f"error: {e}\n", 2
    return interp_streams(tp, args)
