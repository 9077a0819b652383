#!/usr/bin/env python3
"""Reproduce the matrix-multiply timing comparison.

Builds the three compiled variants (integer, integer with bounds checks,
real) plus the tree-walking interpreter baseline, times them over square
matrices at the requested sizes, and writes both a human table and a CSV.

    python3 scripts/run_bench.py --sizes 100,300 --repeats 3 --csv out.csv
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tymc.bench import format_csv, format_table, run_bench


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,300",
                    help="comma-separated square sizes (default 100,300)")
    ap.add_argument("--repeats", type=int, default=3,
                    help="timed repetitions per variant, median kept")
    ap.add_argument("--seed", type=int, default=20240901)
    ap.add_argument("--cxx", default=None, help="C++ compiler (default c++)")
    ap.add_argument("--build-dir", default=None)
    ap.add_argument("--csv", default=None, help="also write the CSV here")
    args = ap.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    report = run_bench(
        sizes,
        repeats=args.repeats,
        seed=args.seed,
        cxx=args.cxx,
        build_dir=args.build_dir,
        progress=lambda msg: print(msg, file=sys.stderr),
    )
    print(format_table(report))
    csv = format_csv(report)
    if args.csv:
        Path(args.csv).write_text(csv)
        print(f"wrote {args.csv}", file=sys.stderr)
    else:
        print(csv)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
