"""Command-line driver.

Verbs:
    compile   translate a .tm file to C++ (octave or standalone target)
    check     analyze only, print diagnostics
    interp    execute in the reference interpreter
    run       compile standalone, build with a C++ compiler, execute
    bench     build and time the matrix-multiplication variants

Exit codes: 0 success, 1 compile/analyze diagnostics, 2 runtime error,
3 build failure.
"""
from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

from . import bench as bench_mod
from . import driver, runner
from .codegen import TARGETS, emit_module

EXIT_OK = 0
EXIT_DIAGS = 1
EXIT_RUNTIME = 2
EXIT_BUILD = 3


def _analyze(path: str) -> "driver.TypedProgram":
    tp = driver.analyze_file(path)
    warn = driver.stem_mismatch(path, tp)
    if warn:
        print(f"warning: {warn}", file=sys.stderr)
    for line in tp.rendered():
        print(line, file=sys.stderr)
    return tp


def cmd_compile(args) -> int:
    tp = _analyze(args.input)
    mod = emit_module(tp, args.target)
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.input).parent
    out = driver.write_module(mod, out_dir)
    print(out)
    return EXIT_OK


def cmd_check(args) -> int:
    tp = _analyze(args.input)
    n_warn = len(tp.diagnostics)
    print(f"ok: {tp.program.function.name} ({n_warn} warning{'s' if n_warn != 1 else ''})")
    return EXIT_OK


def cmd_interp(args) -> int:
    tp = _analyze(args.input)
    args_text = Path(args.args).read_text() if args.args else ""
    out, err, code = runner.interp_args_text(tp, args_text)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


def cmd_run(args) -> int:
    tp = _analyze(args.input)
    mod = emit_module(tp, "standalone")
    build_dir = Path(args.build_dir) if args.build_dir else None
    with tempfile.TemporaryDirectory(prefix="tymc-run-") as tmp:
        workdir = build_dir if build_dir else Path(tmp)
        workdir.mkdir(parents=True, exist_ok=True)
        cpp = driver.write_module(mod, workdir)
        binary = workdir / mod.function_name
        runner.build_binary(cpp, binary, cxx=args.cxx, include_dir=args.runtime_include)
        args_path = Path(args.args) if args.args else workdir / "noargs.txt"
        if not args.args:
            args_path.write_text("")
        proc = runner.run_binary(binary, args_path)
    sys.stdout.write(proc.stdout)
    sys.stderr.write(proc.stderr)
    return proc.returncode


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    report = bench_mod.run_bench(
        sizes=sizes,
        repeats=args.repeats,
        seed=args.seed,
        cxx=args.cxx,
        build_dir=args.build_dir,
        runtime_include=args.runtime_include,
    )
    print(bench_mod.format_table(report))
    csv_text = bench_mod.format_csv(report)
    if args.csv:
        Path(args.csv).write_text(csv_text)
        print(f"csv written to {args.csv}", file=sys.stderr)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tymc", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compile", help="translate a .tm file to C++")
    p.add_argument("input")
    p.add_argument("--target", choices=sorted(TARGETS), default="octave")
    p.add_argument("--out-dir", default=None, help="directory for the .cpp (default: beside the input)")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("check", help="analyze only")
    p.add_argument("input")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("interp", help="run in the reference interpreter")
    p.add_argument("input")
    p.add_argument("--args", default=None, help="argument file")
    p.set_defaults(fn=cmd_interp)

    p = sub.add_parser("run", help="build with the standalone target and execute")
    p.add_argument("input")
    p.add_argument("--args", default=None, help="argument file")
    p.add_argument("--cxx", default=runner.DEFAULT_CXX)
    p.add_argument("--build-dir", default=None, help="keep build artifacts here (default: temp)")
    p.add_argument("--runtime-include", default=None, help="directory containing the support header")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("bench", help="time the matrix-multiplication variants")
    p.add_argument("--sizes", default="100,300", help="comma-separated matrix sizes")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=20240901)
    p.add_argument("--cxx", default=runner.DEFAULT_CXX)
    p.add_argument("--build-dir", default=None)
    p.add_argument("--runtime-include", default=None)
    p.add_argument("--csv", default=None, help="also write machine-readable rows here")
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv: list[str] | None = None) -> int:
    ns = build_arg_parser().parse_args(argv)
    try:
        return ns.fn(ns)
    except driver.CompileFailure as e:
        for line in e.lines:
            print(line, file=sys.stderr)
        return EXIT_DIAGS
    except runner.BuildFailure as e:
        print(f"build failure: {e}", file=sys.stderr)
        return EXIT_BUILD
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DIAGS


if __name__ == "__main__":
    sys.exit(main())
