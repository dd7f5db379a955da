"""Command-line front end: scenario files in, deterministic reports out.

Four subcommands:

* ``tradeoff`` — overlap/interference report for a ``pair`` scenario;
* ``fringe`` — phase-sweep CSV (``chi,label,probability``) for a ``pair``
  or ``interferometer`` scenario, over an even grid from 0 to pi;
* ``np`` — threshold-test analysis for a ``distributions`` (or ``pair``)
  scenario: best tests and both error bounds;
* ``verify`` — the seeded randomized suites of :mod:`whichpath.verify`.

Exit codes: 0 on success, 2 on unusable input (bad flags, unreadable or
invalid scenario), 3 when a checked inequality is violated beyond the
tolerance.  The ``verify`` exit reflects the asserting suites only; the
phase-candidate sweep inside it is informational.

All numbers in JSON reports are rendered with 17 significant digits and
every run is a pure function of (input file, flags, seed), so repeated
runs produce byte-identical output.  Infinite thresholds appear as the
JSON strings ``"inf"``/``"-inf"``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .interferometer import InterferometerScenario, beam_measurement, build_paths
from .measures import fringe_scan, outcome_distribution, tradeoff_report
from .nptesting import best_np_test, verify_bounds
from .scenario import DistributionPair, PairScenario, ScenarioError, load_scenario
from .verify import run_verification

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


def _float_token(value: float) -> str:
    if math.isnan(value):
        raise ValueError("refusing to serialize NaN")
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    return format(value, ".17g")


def render_json(value, indent: str = "") -> str:
    """Serialize to JSON with floats at 17 significant digits.

    Deterministic by construction: dictionaries keep insertion order and
    floats have one canonical rendering, so equal values give equal bytes.
    """
    inner = indent + "  "
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _float_token(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(inner + render_json(item, inner) for item in value)
        return "[\n" + body + "\n" + indent + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            inner + json.dumps(str(key)) + ": " + render_json(item, inner)
            for key, item in value.items()
        )
        return "{\n" + body + "\n" + indent + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _at_least(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return value

    return parse


def cmd_tradeoff(args) -> int:
    scenario = load_scenario(args.scenario)
    if not isinstance(scenario, PairScenario):
        raise ScenarioError("the tradeoff command needs a scenario of kind 'pair'")
    try:
        report = tradeoff_report(scenario.psi1, scenario.psi2, scenario.measurement)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    holds = report.slack >= -args.tolerance
    payload = {
        "command": "tradeoff",
        "indistinguishability": report.indistinguishability,
        "interference": report.interference,
        "slack": report.slack,
        "tolerance": args.tolerance,
        "holds": holds,
        "per_outcome": [
            {
                "label": record.label,
                "p": record.p,
                "q": record.q,
                "interference": record.interference,
                "visibility": record.visibility,
            }
            for record in report.per_outcome
        ],
    }
    _write_text(render_json(payload) + "\n", args.out)
    return EXIT_OK if holds else EXIT_VIOLATION


def cmd_fringe(args) -> int:
    scenario = load_scenario(args.scenario)
    if isinstance(scenario, PairScenario):
        psi1, psi2, measurement = scenario.psi1, scenario.psi2, scenario.measurement
    elif isinstance(scenario, InterferometerScenario):
        try:
            psi1, psi2 = build_paths(scenario)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
        measurement = beam_measurement(scenario)
    else:
        raise ScenarioError(
            "the fringe command needs a scenario of kind 'pair' or 'interferometer'"
        )
    chis = np.linspace(0.0, math.pi, args.chi_steps)
    try:
        scan = fringe_scan(psi1, psi2, measurement, chis)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    lines = ["chi,label,probability"]
    for chi, label, probability in scan.rows():
        lines.append(
            f"{format(chi, '.17g')},{label},{format(probability, '.17g')}"
        )
    _write_text("\n".join(lines) + "\n", args.csv)
    return EXIT_OK


def cmd_np(args) -> int:
    scenario = load_scenario(args.scenario)
    if isinstance(scenario, DistributionPair):
        p, q = scenario.p, scenario.q
    elif isinstance(scenario, PairScenario):
        p = outcome_distribution(scenario.psi1, scenario.measurement)
        q = outcome_distribution(scenario.psi2, scenario.measurement)
    else:
        raise ScenarioError(
            "the np command needs a scenario of kind 'distributions' or 'pair'"
        )
    bounds = verify_bounds(p, q)
    sum_test, sum_errors = best_np_test(p, q, objective="sum")
    product_test, product_errors = best_np_test(p, q, objective="product")
    holds = bounds.holds(args.tolerance)
    payload = {
        "command": "np",
        "indistinguishability": bounds.u,
        "sum_floor": bounds.sum_floor,
        "product_cap": bounds.product_cap,
        "best_sum": {
            "threshold": sum_test.threshold,
            "gamma": sum_test.gamma,
            "err1": sum_errors.err1,
            "err2": sum_errors.err2,
            "total": sum_errors.total,
        },
        "best_product": {
            "threshold": product_test.threshold,
            "gamma": product_test.gamma,
            "err1": product_errors.err1,
            "err2": product_errors.err2,
            "product": product_errors.product,
        },
        "bounds": {
            "tests_checked": bounds.tests_checked,
            "min_sum_slack": bounds.min_sum_slack,
            "min_product_slack": bounds.min_product_slack,
            "holds": holds,
        },
        "tolerance": args.tolerance,
    }
    _write_text(render_json(payload) + "\n", args.out)
    return EXIT_OK if holds else EXIT_VIOLATION


def cmd_verify(args) -> int:
    report = run_verification(
        seed=args.seed,
        trials=args.trials,
        max_dim=args.max_dim,
        tolerance=args.tolerance,
    )
    _write_text(render_json(report) + "\n", args.out)
    return EXIT_OK if report["violations"] == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whichpath",
        description=(
            "Indistinguishability/interference trade-off reports, fringe "
            "scans, threshold-test bounds, and randomized verification."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    tradeoff = commands.add_parser(
        "tradeoff", help="overlap/interference report for a pair scenario"
    )
    tradeoff.add_argument("scenario", help="path to a scenario JSON file")
    tradeoff.add_argument("--tolerance", type=float, default=1e-10)
    tradeoff.add_argument("--out", default=None, help="write JSON here instead of stdout")
    tradeoff.set_defaults(func=cmd_tradeoff)

    fringe = commands.add_parser(
        "fringe", help="phase-sweep CSV for a pair or interferometer scenario"
    )
    fringe.add_argument("scenario", help="path to a scenario JSON file")
    fringe.add_argument(
        "--chi-steps",
        type=_at_least(2),
        default=64,
        help="grid points from 0 to pi inclusive (default 64)",
    )
    fringe.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    fringe.set_defaults(func=cmd_fringe)

    np_cmd = commands.add_parser(
        "np", help="threshold-test errors and bounds for two distributions"
    )
    np_cmd.add_argument("scenario", help="path to a scenario JSON file")
    np_cmd.add_argument("--tolerance", type=float, default=1e-10)
    np_cmd.add_argument("--out", default=None, help="write JSON here instead of stdout")
    np_cmd.set_defaults(func=cmd_np)

    verify = commands.add_parser(
        "verify", help="run the seeded randomized verification suites"
    )
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=_at_least(1), default=1000)
    verify.add_argument("--max-dim", type=_at_least(2), default=6)
    verify.add_argument("--tolerance", type=float, default=1e-10)
    verify.add_argument("--out", default=None, help="write JSON here instead of stdout")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
