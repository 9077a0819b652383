"""Timing harness for the matrix-multiplication variants.

Four variants, all multiplying two random square matrices:

    mult-int        integer kernel, zero-based + no-init + no-checks
    mult-int-check  integer kernel with every safety feature left on
    mult-real       real kernel, zero-based + no-init + no-checks
    mult-interp     the real kernel executed by the reference interpreter

Compiled variants time themselves: the binary takes the repeat count as
argv[2] and writes one `time <seconds>` line per repeat to stderr, so
process startup and argument parsing never pollute the measurement.  The
interpreter variant is timed in-process around the call for the same
reason.  The reported figure is the median across repeats.  Matrix fill is
seeded so runs are reproducible; the seed is recorded in the report.
"""
from __future__ import annotations

import random
import statistics
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import driver, runner
from .codegen import emit_module
from .interp import PyArr, compile_program

FIXTURES = Path(__file__).resolve().parent / "fixtures"

COMPILED_VARIANTS = [
    ("mult-int", "multint"),
    ("mult-int-check", "multintcheck"),
    ("mult-real", "mymult"),
]
INTERP_VARIANT = ("mult-interp", "mymult")

INT_LO, INT_HI = 0, 999


@dataclass(frozen=True)
class BenchRow:
    variant: str
    size: int
    seconds: float
    ratio: float


@dataclass
class BenchReport:
    sizes: list[int]
    repeats: int
    seed: int
    rows: list[BenchRow] = field(default_factory=list)

    def row(self, variant: str, size: int) -> BenchRow:
        for r in self.rows:
            if r.variant == variant and r.size == size:
                return r
        raise KeyError((variant, size))


def _rng_for(seed: int, size: int) -> random.Random:
    return random.Random(seed * 1_000_003 + size)


def _int_rows(rng: random.Random, n: int) -> list[list[int]]:
    return [[rng.randint(INT_LO, INT_HI) for _ in range(n)] for _ in range(n)]


def _real_rows(rng: random.Random, n: int) -> list[list[float]]:
    return [[rng.random() for _ in range(n)] for _ in range(n)]


def _array_block(kind: str, rows: list[list]) -> str:
    n = len(rows)
    lines = [f"{kind} {n} {n}"]
    for row in rows:
        lines.append(" ".join(str(v) if kind == "intarray" else f"{v:.17g}" for v in row))
    return "\n".join(lines)


def args_text_for(size: int, seed: int, is_int: bool) -> str:
    """Two size×size operands; same seed → same matrices every run."""
    rng = _rng_for(seed, size)
    kind = "intarray" if is_int else "realarray"
    make = _int_rows if is_int else _real_rows
    a = make(rng, size)
    b = make(rng, size)
    return _array_block(kind, a) + "\n" + _array_block(kind, b) + "\n"


def _pyarr_from_rows(rows: list[list[float]]) -> PyArr:
    n = len(rows)
    arr = PyArr.filled(n, n, False, "zero")
    for c in range(n):
        for r in range(n):
            arr.data[c * n + r] = float(rows[r][c])
    return arr


def _parse_time_lines(stderr: str) -> list[float]:
    out = []
    for line in stderr.splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[0] == "time":
            out.append(float(parts[1]))
    return out


def run_bench(
    sizes: list[int],
    repeats: int = 3,
    seed: int = 20240901,
    cxx: str = runner.DEFAULT_CXX,
    build_dir: str | None = None,
    runtime_include: str | None = None,
    progress=None,
) -> BenchReport:
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    cxx = cxx or runner.DEFAULT_CXX
    report = BenchReport(sizes=list(sizes), repeats=repeats, seed=seed)
    note = progress or (lambda msg: print(msg, file=sys.stderr))

    with tempfile.TemporaryDirectory(prefix="tymc-bench-") as tmp:
        workdir = Path(build_dir) if build_dir else Path(tmp)
        workdir.mkdir(parents=True, exist_ok=True)

        binaries = {}
        for variant, stem in COMPILED_VARIANTS:
            tp = driver.analyze_file(FIXTURES / f"{stem}.tm")
            cpp = driver.write_module(emit_module(tp, "standalone"), workdir)
            binary = workdir / f"{variant}-bin"
            note(f"building {variant}")
            runner.build_binary(cpp, binary, cxx=cxx, include_dir=runtime_include)
            binaries[variant] = binary

        interp_tp = driver.analyze_file(FIXTURES / f"{INTERP_VARIANT[1]}.tm")
        interp_prog = compile_program(interp_tp)

        raw: dict[tuple[str, int], float] = {}
        for size in sizes:
            for variant, stem in COMPILED_VARIANTS:
                is_int = "int" in variant
                args_path = workdir / f"args-{size}-{'i' if is_int else 'r'}.txt"
                if not args_path.exists():
                    args_path.write_text(args_text_for(size, seed, is_int))
                note(f"timing {variant} at {size}x{size}")
                proc = runner.run_binary(binaries[variant], args_path, repeats=repeats)
                if proc.returncode != 0:
                    raise runner.BuildFailure(
                        f"{variant} exited {proc.returncode} at size {size}: {proc.stderr}"
                    )
                times = _parse_time_lines(proc.stderr)
                if len(times) != repeats:
                    raise runner.BuildFailure(
                        f"{variant} reported {len(times)} timings, expected {repeats}"
                    )
                raw[(variant, size)] = statistics.median(times)

            note(f"timing {INTERP_VARIANT[0]} at {size}x{size}")
            rng = _rng_for(seed, size)
            a = _pyarr_from_rows(_real_rows(rng, size))
            b = _pyarr_from_rows(_real_rows(rng, size))
            times = []
            for _ in range(repeats):
                t0 = time.perf_counter()
                result = interp_prog.run([a, b])
                times.append(time.perf_counter() - t0)
                assert result.exit == "normal"
            raw[(INTERP_VARIANT[0], size)] = statistics.median(times)

        for size in sizes:
            fastest = min(raw[(v, size)] for v, _ in COMPILED_VARIANTS + [INTERP_VARIANT])
            for variant, _ in COMPILED_VARIANTS + [INTERP_VARIANT]:
                secs = raw[(variant, size)]
                ratio = secs / fastest if fastest > 0 else 1.0
                report.rows.append(BenchRow(variant, size, secs, ratio))
    return report


def format_table(report: BenchReport) -> str:
    lines = [
        f"matrix multiply timings (median of {report.repeats}, seed {report.seed})",
        f"{'variant':<16} {'size':>6} {'seconds':>12} {'ratio':>10}",
    ]
    for row in report.rows:
        lines.append(
            f"{row.variant:<16} {row.size:>6} {row.seconds:>12.6f} {row.ratio:>10.2f}"
        )
    return "\n".join(lines)


def format_csv(report: BenchReport) -> str:
    lines = ["variant,size,seconds,ratio"]
    for row in report.rows:
        lines.append(f"{row.variant},{row.size},{row.seconds:.9f},{row.ratio:.6f}")
    return "\n".join(lines) + "\n"
