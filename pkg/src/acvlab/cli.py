"""``acv-lab`` command line: run suites, sample points, re-verify fixtures."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import AcvError
from .suites import SUITES, SuiteConfig, run_suite, sample_fixture, verify_fixture


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="acv-lab", description="Exact checks on the almost-commuting variety for sp_2n.")
    sub = parser.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run a seeded experiment suite")
    suite.add_argument("name", choices=SUITES)
    suite.add_argument("--n", type=int, required=True)
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--trials", type=int, default=1)
    suite.add_argument("--degree", type=int, default=6, help="degree bound for quotient/wallach")
    suite.add_argument("--out", default="-", help="output path, '-' for stdout")

    verify = sub.add_parser("verify", help="re-verify a stored fixture or report")
    verify.add_argument("path")
    verify.add_argument("--out", default="-")

    sample = sub.add_parser("sample", help="write one sampled point of X_n")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--out", default="-")
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    try:
        if args.command == "suite":
            cfg = SuiteConfig(n=args.n, seed=args.seed, trials=args.trials,
                              degree_bound=args.degree, output_path=args.out)
            report = run_suite(args.name, cfg)
            _write(report.dumps(), args.out)
            return 0 if report.passed else 1
        if args.command == "verify":
            report = verify_fixture(args.path)
            _write(report.dumps(), args.out)
            return 0 if report.passed else 1
        data = sample_fixture(args.n, args.seed)
        _write(json.dumps(data, sort_keys=True, indent=2), args.out)
        return 0
    except (AcvError, OSError) as exc:
        print(f"acv-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
