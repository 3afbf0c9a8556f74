"""Command-line front end.

    scalefield run <scenario.json> [--out DIR] [--seed N] [--verbose]
    scalefield validate <scenario.json>
    scalefield axioms --kind rational --t 3/2 --s 2 [--samples N] [--seed K]

`run` executes the scenario and reports 0 on success, 1 on a task failure,
2 on a parse error, 3 on a validation error.  `validate` checks a scenario
without running it (same 0/2/3 codes).  `axioms` exercises one scaled
structure directly and reports 0 only if every axiom holds.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .axioms import axiom_suite
from .errors import ScaleFieldError, ScenarioParseError, ScenarioValidationError
from .exact import parse_fraction
from .runner import (
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_TASK_FAILURE,
    EXIT_VALIDATION_ERROR,
    run_scenario,
)
from .scenario import parse_scenario, validate_scenario
from .structures import KINDS, structure


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalefield",
        description="scenario-driven computations with scaled number "
                    "structures over a scaling field",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario file")
    run.add_argument("scenario", help="path to a scenario JSON file")
    run.add_argument("--out", help="output directory (beats SCALEFIELD_OUT "
                                   "and the scenario's own output field)")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--verbose", action="store_true",
                     help="print per-task progress")

    val = sub.add_parser("validate", help="parse and validate a scenario "
                                          "without running it")
    val.add_argument("scenario", help="path to a scenario JSON file")

    ax = sub.add_parser("axioms", help="run the axiom suite on one structure")
    ax.add_argument("--kind", required=True, choices=sorted(KINDS))
    ax.add_argument("--t", required=True,
                    help="scaling factor t, e.g. 3/2 or 4")
    ax.add_argument("--s", required=True,
                    help="value level s, e.g. 2 or 1/3")
    ax.add_argument("--samples", type=int, default=100)
    ax.add_argument("--seed", type=int, default=0)
    ax.add_argument("--stride", type=int,
                    help="base-set stride for natural structures")
    return parser


def _cmd_validate(path: str) -> int:
    try:
        scenario = parse_scenario(path)
    except ScenarioParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        validate_scenario(scenario)
    except ScenarioValidationError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    print(f"ok: {len(scenario.tasks)} task(s), "
          f"dimension {scenario.manifold.dimension}")
    return EXIT_OK


def _cmd_axioms(args: argparse.Namespace) -> int:
    try:
        st = structure(args.kind, parse_fraction(args.t),
                       parse_fraction(args.s), args.stride)
        report = axiom_suite(st, samples=args.samples, seed=args.seed)
    except (ScaleFieldError, ValueError, ArithmeticError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_TASK_FAILURE
    for line in report.lines():
        print(line)
    return EXIT_OK if report.all_passed else EXIT_TASK_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return run_scenario(args.scenario, out=args.out, seed=args.seed,
                            verbose=args.verbose)
    if args.command == "validate":
        return _cmd_validate(args.scenario)
    return _cmd_axioms(args)


if __name__ == "__main__":
    sys.exit(main())
