"""
Command-line entry point ``ddperf``.

    ddperf run --nx 512 --ny 512 --partitions 2x2,4x4,8x8 --reps 5 --workers 0
    ddperf report results/timings.csv --view dc_framework
    ddperf reference --view dc_comparison
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..helper._helper import getLogger, log_to_console
from ..helper.exceptions import DDPerfError
from ..input import FORMATS, VIEWS, ExperimentConfigProcessor
from .experiment import run_experiment
from .reference import printed_goal_discrepancies, reference_result_set
from .report import EfficiencyReport, derive_report, emit
from .results_io import load_results, save_results

logger = getLogger(__name__)

EXTENSIONS = {"table": "txt", "csv": "csv", "json": "json"}


def _add_output_arguments(parser: argparse.ArgumentParser, with_defaults: bool) -> None:
    default = (lambda value: value) if with_defaults else (lambda value: None)
    parser.add_argument("--format", default=default("table"),
                        help=f"Comma-separated output formats among {', '.join(FORMATS)} (default: table)")
    parser.add_argument("--view", default=default("full"), choices=VIEWS,
                        help="Report view (default: full)")
    parser.add_argument("--out", default=None, help="Output directory; reports go to stdout when omitted")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log progress; repeat for debug output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddperf",
                                     description="Strong-scaling timings and DC-efficiency reports for a "
                                                 "domain decomposition Laplace solver.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run an experiment, save the timings and emit the report")
    run.add_argument("--config", help="Flat key = value file; flags override it")
    run.add_argument("--nx", type=int, help="Interior nodes along x")
    run.add_argument("--ny", type=int, help="Interior nodes along y")
    run.add_argument("--partitions", help="Comma list of subdomain layouts such as 2x2,4x4")
    run.add_argument("--reps", type=int, help="Repetitions per cell, the minimum is reported")
    run.add_argument("--tol", type=float, help="Relative residual tolerance of the interface iteration")
    run.add_argument("--workers", type=int, help="Concurrent workers, 0 for every core")
    run.add_argument("--protocols", help="Comma list among monolithic, parallel, single-local")
    run.add_argument("--seed", type=int, help="Seed of the random load vector")
    _add_output_arguments(run, with_defaults=False)

    report = commands.add_parser("report", help="Emit the report of saved timings")
    report.add_argument("path", help="timings.csv, timings.json or the directory holding them")
    _add_output_arguments(report, with_defaults=True)

    reference = commands.add_parser("reference", help="Emit the report of the published measurements")
    _add_output_arguments(reference, with_defaults=True)

    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        log_to_console(logging.DEBUG)
    elif verbose == 1:
        log_to_console(logging.INFO)


def _write_reports(report: EfficiencyReport, formats: List[str], view: str, out: Optional[str]) -> None:
    for fmt in formats:
        destination = Path(out) / f"report_{view}.{EXTENSIONS[fmt]}" if out else None
        text = emit(report, fmt, destination, view=view)
        if destination is None or fmt == "table":
            sys.stdout.write(text)


def _formats(text: str) -> List[str]:
    formats = [item.strip() for item in text.split(",") if item.strip()]
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise DDPerfError(f"Unknown output formats {sorted(unknown)}; expected a subset of {list(FORMATS)}.")
    return formats


def reference_report() -> EfficiencyReport:
    """Report of the published measurements, annotated where printed goals disagree with the raw times."""
    report = derive_report(reference_result_set())
    for row in printed_goal_discrepancies().itertuples(index=False):
        note = (f"Printed S_DC at p = {row.p} is {row.printed:,.1f} but T(1,n)/T(1,n/p) gives "
                f"{row.recomputed:,.1f}; the recomputed value is used.")
        logger.warning(note)
        report.notes.append(note)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        if args.command == "run":
            overrides = {key: getattr(args, key) for key in
                         ("nx", "ny", "partitions", "reps", "tol", "workers", "protocols", "seed", "view",
                          "format", "out")}
            overrides["verbose"] = args.verbose
            config = ExperimentConfigProcessor(args.config, overrides).process_config()
            result_set = run_experiment(config)
            save_results(result_set, config.out)
            _write_reports(derive_report(result_set), list(config.formats), config.view, config.out)
        elif args.command == "report":
            report = derive_report(load_results(args.path))
            _write_reports(report, _formats(args.format), args.view, args.out)
        else:
            _write_reports(reference_report(), _formats(args.format), args.view, args.out)
    except (DDPerfError, OSError) as error:
        sys.stderr.write(f"ddperf: error: {error}\n")
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())
