"""Command line entry point: ``ppcodes --input FILE`` or ``ppcodes --fixtures``."""

from __future__ import annotations

import argparse
import sys

from . import fixtures, pipeline
from .errors import BudgetExceeded, TheoremViolation
from .field import FieldError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_THEOREM = 3
EXIT_BUDGET = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ppcodes",
        description="Parameters of projective parameterized codes over GF(q).")
    p.add_argument("--input", metavar="PATH", help="JSON matrix, graph or clutter file")
    p.add_argument("--kind", choices=pipeline.KINDS,
                   help="input kind (default: matrix if the file has a 'matrix' field)")
    p.add_argument("--dmax", type=int, default=None,
                   help="largest degree to tabulate (default (m-1)(q-2)-1)")
    p.add_argument("--exact-budget", type=int, default=0,
                   help="symbol-operation budget per exact minimum distance (0 skips)")
    p.add_argument("--delta-convention", choices=("floor", "ceil"), default="floor",
                   help="rounding of the rational lower bound")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--jobs", type=int, default=1, help="degrees computed concurrently")
    p.add_argument("--fixtures", action="store_true",
                   help="reproduce the three reference tables and report mismatches")
    return p


def _run_fixtures(out) -> int:
    bad = 0
    for name in fixtures.REFERENCE:
        _, mism = fixtures.check_example(name)
        status = "ok" if not mism else f"{len(mism)} mismatches"
        print(f"{name}: {status}", file=out)
        for m in mism:
            print(f"  {m}", file=out)
        bad += len(mism)
    return EXIT_OK if bad == 0 else EXIT_THEOREM


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.fixtures:
        return _run_fixtures(out)
    if not args.input:
        print("error: --input or --fixtures is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        code = pipeline.load_input(args.input, args.kind)
        if args.dmax is not None and args.dmax < 0:
            raise ValueError("--dmax must be nonnegative")
        config = pipeline.RunConfig(code.q, code.kind, args.dmax, args.exact_budget,
                                    args.delta_convention, args.format, jobs=args.jobs)
        result = pipeline.run(config, code)
    except (OSError, ValueError, FieldError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    out.write(pipeline.render(result, args.format))
    if result.partial:
        print("budget exhausted: table has gaps", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
