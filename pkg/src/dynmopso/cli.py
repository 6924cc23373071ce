"""Command line entry point: ``dynmopso run | metrics | summarize``.

Exit codes: 0 success, 1 configuration error, 2 some grid cells failed.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .harness import OUT_ENV, ConfigError, load_config, rebuild_summary, recompute_metrics, run_experiment


def _print_summary(summary) -> None:
    print(f"{'problem':8} {'algorithm':14} {'metric':7} {'mean':>12} {'median':>12} {'sd':>11}")
    for r in summary.rows:
        star = " *" if r.best else ""
        print(f"{r.problem:8} {r.algorithm:14} {r.metric:7} {r.mean:12.5g} {r.median:12.5g} {r.sd:11.4g}{star}")


def _out_dir(flag: str | None) -> str | None:
    return flag or os.environ.get(OUT_ENV)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynmopso", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the problem x algorithm x run grid")
    run.add_argument("--config", help="flat key = value config file")
    run.add_argument("--problem", help="comma-separated ids: fda1,dimp2,dmop3")
    run.add_argument("--algorithm", help="comma-separated ids: dynamic-mopso,omopso,nsga2")
    run.add_argument("--runs", type=int)
    run.add_argument("--seed", type=int, help="base seed")
    run.add_argument("--out", help=f"output directory (or ${OUT_ENV})")
    run.add_argument("--iterations", type=int)
    run.add_argument("--severity", type=int)
    run.add_argument("--frequency", type=int)
    run.add_argument("--workers", type=int)

    metrics = sub.add_parser("metrics", help="recompute report CSVs from stored traces")
    metrics.add_argument("--out", help=f"output directory (or ${OUT_ENV})")

    summ = sub.add_parser("summarize", help="rebuild summary.csv from report CSVs")
    summ.add_argument("--out", help=f"output directory (or ${OUT_ENV})")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    if args.command == "run":
        overrides = {
            "problems": args.problem,
            "algorithms": args.algorithm,
            "runs": args.runs,
            "base_seed": args.seed,
            "out": _out_dir(args.out),
            "iterations": args.iterations,
            "severity": args.severity,
            "frequency": args.frequency,
            "workers": args.workers,
        }
        try:
            config = load_config(args.config, overrides)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 1
        result = run_experiment(config)
        _print_summary(result.summary)
        for line in result.failures:
            print(f"failed: {line}", file=sys.stderr)
        return result.exit_code

    out = _out_dir(args.out) or "results"
    if not Path(out).is_dir():
        print(f"config error: output directory {out!r} does not exist", file=sys.stderr)
        return 1
    if args.command == "metrics":
        n = recompute_metrics(out)
        print(f"recomputed {n} report(s) in {out}/reports")
        return 0
    _print_summary(rebuild_summary(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
