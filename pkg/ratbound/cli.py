"""
Command-Line Interface
======================

``ratbound`` subcommands:

- ``analyze FILE``: comparability facts, theorem applications and verdicts.
- ``eta --k K --source S --target T``: decide an eta condition.
- ``simulate FILE --steps N --out CSV``: generate one trajectory.
- ``verify FILE --trials T --steps N --seed S``: cross-check an analysis on random
  initial conditions.
- ``corpus``: list or check the bundled examples.

Exit codes: 0 success, 1 violations found, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .comparability import Orientation
from .corpus import check_corpus, list_examples
from .errors import DocumentError, PreconditionError, RatboundError
from .eta import EtaQuery, eta_decide, eta_oracle, parse_index_list
from .loader import load_system, read_json
from .results import (
    format_report_text,
    format_verification_text,
    report_to_dict,
    save_report,
    save_trajectory_csv,
    verification_to_dict,
)
from .simulator import (
    InitialConditions,
    SimulationMode,
    cross_check,
    run_trials,
    simulate,
)
from .theorems import analyze, explain
from .warmup import warmup_jit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratbound",
        description="Boundedness analysis for systems of two rational difference equations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Find theorem cases that prove boundedness")
    p.add_argument("file", help="System document (JSON)")
    p.add_argument("--report", help="Write the report here (.json for JSON, otherwise text)")
    p.add_argument("--text", action="store_true", help="Print text instead of JSON")
    p.add_argument(
        "--explain",
        metavar="ID[:CASE]",
        help="Print the clause-by-clause evaluation of one theorem row, e.g. 10:iii",
    )
    p.add_argument(
        "--swapped", action="store_true", help="With --explain, evaluate on the swapped system"
    )

    p = sub.add_parser("eta", help="Decide an eta condition")
    p.add_argument("--k", type=int, required=True, help="Order of the system")
    p.add_argument("--source", required=True, help="Comma-separated source lags, e.g. 1,2")
    p.add_argument("--target", required=True, help="Comma-separated target lags")
    p.add_argument(
        "--oracle", type=int, metavar="MAX_LEN", help="Also run the brute-force oracle"
    )
    p.add_argument("--json", action="store_true", help="Print the decision as JSON")

    p = sub.add_parser("simulate", help="Generate a trajectory")
    p.add_argument("file", help="System document (JSON)")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--mode", choices=("float", "exact"), default="float")
    p.add_argument("--init", help="Initial conditions JSON ({x: [...], y: [...]})")
    p.add_argument("--out", required=True, help="Trajectory CSV")

    p = sub.add_parser("verify", help="Cross-check an analysis on random trajectories")
    p.add_argument("file", help="System document (JSON)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=("float", "exact"), default="float")
    p.add_argument("--burn-in", type=int, help="Burn-in index (default: half the steps)")
    p.add_argument(
        "--positive-init", action="store_true", help="Draw initial conditions from [1e-3, 10]"
    )
    p.add_argument("--workers", type=int, default=1, help="Worker processes")
    p.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    p.add_argument("--report", help="Write the verification summary as JSON")

    p = sub.add_parser("corpus", help="Bundled example systems")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--list", action="store_true", help="List the examples (default)")
    group.add_argument("--check", action="store_true", help="Check every expected derivation")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def _mode(name: str) -> SimulationMode:
    return SimulationMode.EXACT if name == "exact" else SimulationMode.FLOAT64


def _parse_explain(text: str) -> tuple[int, Optional[str]]:
    theorem, _, case = text.partition(":")
    try:
        return int(theorem), case or None
    except ValueError as e:
        raise PreconditionError(f"--explain expects ID[:CASE], got {text!r}") from e


def _cmd_analyze(args: argparse.Namespace) -> int:
    document = load_system(args.file)
    if args.explain:
        theorem, case = _parse_explain(args.explain)
        orientation = Orientation.SWAPPED if args.swapped else Orientation.DIRECT
        trace = explain(
            document.system,
            theorem,
            case,
            orientation=orientation,
            user_facts=document.facts,
            bounds=document.bounds,
        )
        for clause in trace:
            mark = "PASS" if clause.passed else "FAIL"
            print(f"{mark} {clause.clause}" + (f"  ({clause.detail})" if clause.detail else ""))
        return EXIT_OK

    report = analyze(document.system, document.facts, document.bounds)
    if args.report:
        save_report(report, args.report)
    if args.text:
        sys.stdout.write(format_report_text(report))
    elif not args.report:
        print(json.dumps(report_to_dict(report), indent=2))
    return EXIT_OK


def _cmd_eta(args: argparse.Namespace) -> int:
    query = EtaQuery(
        args.k, parse_index_list(args.source), parse_index_list(args.target)
    ).validated()
    decision = eta_decide(query)
    if args.json:
        data = decision.to_dict()
        if args.oracle:
            data["oracle"] = eta_oracle(query, args.oracle).to_dict()
        print(json.dumps(data, indent=2))
        return EXIT_OK
    if decision.holds:
        witness = ",".join(str(s) for s in decision.witness or ()) or "-"
        print(f"holds, eta_min={decision.eta_min}, longest non-hitting sequence: {witness}")
    else:
        prefix = ",".join(str(s) for s in decision.cycle_prefix or ())
        block = ",".join(str(s) for s in decision.cycle_block or ())
        print(f"fails, non-hitting sequence: {prefix + ' ' if prefix else ''}({block})*")
    if args.oracle:
        oracle = eta_oracle(query, args.oracle)
        print(f"oracle (max_len={args.oracle}): {oracle.status.value}, eta_min={oracle.eta_min}")
    return EXIT_OK


def _load_init(path: str) -> InitialConditions:
    raw = read_json(path)
    if not isinstance(raw, dict) or set(raw) != {"x", "y"}:
        raise DocumentError([("", "initial conditions need exactly the keys x and y")])
    return InitialConditions.of(raw["x"], raw["y"])


def _cmd_simulate(args: argparse.Namespace) -> int:
    document = load_system(args.file)
    sys_ = document.system
    if args.init:
        init = _load_init(args.init)
    else:
        init = document.init or InitialConditions.constant(sys_.k)
    mode = _mode(args.mode)
    if mode is SimulationMode.FLOAT64:
        warmup_jit()
    traj = simulate(sys_, init, args.steps, mode)
    save_trajectory_csv(traj, args.out)
    print(f"{len(traj)} steps, {traj.status}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    document = load_system(args.file)
    report = analyze(document.system, document.facts, document.bounds)
    mode = _mode(args.mode)
    if mode is SimulationMode.FLOAT64:
        warmup_jit()
    trajectories = run_trials(
        document.system,
        args.trials,
        args.steps,
        args.seed,
        mode=mode,
        positive_init=args.positive_init,
        workers=args.workers,
        show_progress=not args.no_progress,
    )
    summary = cross_check(report, trajectories, burn_in=args.burn_in)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(verification_to_dict(summary), f, indent=2)
            f.write("\n")
    for verdict in report.verdicts:
        by = f" by {', '.join(verdict.by)}" if verdict.by else ""
        print(f"{verdict.sequence}: {verdict.status}{by}")
    sys.stdout.write(format_verification_text(summary))
    return EXIT_OK if summary.ok else EXIT_VIOLATIONS


def _cmd_corpus(args: argparse.Namespace) -> int:
    if not args.check:
        for name, description in list_examples():
            print(f"{name}: {description}")
        return EXIT_OK
    failures = 0
    for result in check_corpus():
        print(f"{'ok  ' if result.ok else 'FAIL'} {result.name}: {', '.join(result.found) or '-'}")
        for missing in result.missing:
            print(f"     missing {missing}")
        failures += not result.ok
    return EXIT_OK if failures == 0 else EXIT_VIOLATIONS


COMMANDS = {
    "analyze": _cmd_analyze,
    "eta": _cmd_eta,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (RatboundError, OSError) as e:
        print(f"ratbound: {e}", file=sys.stderr)
        return EXIT_INPUT

