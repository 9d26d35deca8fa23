"""Command-line entry point: ``gmm-pielm {solve,bench}``."""
from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources

from . import harness
from .exceptions import NumericalError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def bundled_config_path():
    return resources.files("gmm_pielm").joinpath("data/benchmarks.json")


def _build_parser():
    p = argparse.ArgumentParser(prog="gmm-pielm", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_default):
        sp.add_argument("--config", help="JSON run config")
        sp.add_argument("--seed", type=int, help="override the seed of every run")
        sp.add_argument("--out", default=out_default, help="output directory")
        sp.add_argument("--score-grid", type=int, metavar="N",
                        help="score on N equispaced points including the endpoints "
                             "instead of the collocation grid")

    solve = sub.add_parser("solve", help="run one problem")
    common(solve, "results")
    solve.add_argument("--problem", choices=["single", "double"], default="single",
                       help="bundled benchmark to run when --config is absent")
    solve.add_argument("--method", choices=["both", *harness.METHODS], default="both")

    bench = sub.add_parser("bench", help="baseline vs adaptive on the bundled benchmarks")
    common(bench, "bench_results")
    return p


def _select_runs(args):
    if args.config:
        runs = harness.load_config(args.config, args.seed)
    else:
        with resources.as_file(bundled_config_path()) as path:
            runs = harness.load_config(path, args.seed)
        if args.command == "solve":
            runs = [r for r in runs if r.problem.kind.value == args.problem]
    if args.command == "solve":
        if len(runs) != 1:
            raise harness.ConfigError(f"solve expects exactly one run, config has {len(runs)}")
        if args.method != "both":
            runs[0].methods = (args.method,)
    return runs


def _summary(reports):
    lines = [f"{'run':<28}{'method':<10}{'rmse':>12}{'time (s)':>10}{'cond':>11}"]
    for r in reports:
        lines.append(f"{r.run_id:<28}{r.method:<10}{r.rmse:>12.3e}{r.wall_time_s:>10.3f}"
                     f"{r.condition_number:>11.2e}")
    return "\n".join(lines)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if args.score_grid is not None and args.score_grid < 2:
        print("error: --score-grid needs at least 2 points", file=sys.stderr)
        return EXIT_CONFIG
    try:
        runs = _select_runs(args)
        reports = harness.run_benchmark(runs, args.out, score_grid=args.score_grid)
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(_summary(reports))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
