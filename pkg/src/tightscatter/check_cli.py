"""CLI for checking the closed formula against the oracle completion.

Each case builds the diagram both ways, then checks coefficientwise
equality, consistency of the oracle (identity loop product) and
positivity. Exit code 1 if any case fails.

Usage:
    tightscatter check --p1 "1+x^3" --p2 "1+y^2" --order 20
    tightscatter check --sweep 3 --order 12 --workers 4
    tightscatter check --random 20 --jmax 4 --order 10 --output report.json
"""

import argparse
import sys
import time

from .cli import add_data_args, add_run_args, data_from_args, workers_from_args
from .common import dumps_json, progress, write_output
from .scattering import (
    SCHEMA_VERSION,
    InitialData,
    check_positivity,
    compare_tight_vs_oracle,
    diagram_to_dict,
    is_consistent,
    report_to_dict,
)


def check_case(label: str, data: InitialData, order: int, epsilon: int = -1, workers: int = 1) -> dict:
    """Run every check on one initial data set; 'passed' is the conjunction."""
    report = compare_tight_vs_oracle(data, order, epsilon, workers)
    consistent = is_consistent(report.oracle, order)
    positive = check_positivity(report.oracle) and check_positivity(report.tight)
    return {
        "label": label,
        "comparison": report_to_dict(report),
        "consistent": consistent,
        "positive": positive,
        "passed": report.equal and consistent and positive,
        "diagram": diagram_to_dict(report.oracle),
    }


def _cases(parser: argparse.ArgumentParser, parsed) -> list[tuple[str, InitialData]]:
    if parsed.sweep is not None and parsed.random is not None:
        parser.error("--sweep and --random are mutually exclusive")
    if parsed.sweep is not None:
        if parsed.sweep < 1:
            parser.error("--sweep must be >= 1")
        return [
            (f"symbolic({l1},{l2})", InitialData.symbolic(l1, l2))
            for l1 in range(1, parsed.sweep + 1) for l2 in range(1, parsed.sweep + 1)
        ]
    if parsed.random is not None:
        if parsed.random < 1 or parsed.jmax < 1:
            parser.error("--random and --jmax must be >= 1")
        return [
            (f"random(seed={seed})", InitialData.random_power_series(seed, parsed.jmax))
            for seed in range(parsed.random)
        ]
    return [("input", data_from_args(parser, parsed))]


def main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter check",
        description="Compare tight-grading rays with the oracle completion.",
    )
    add_data_args(parser)
    parser.add_argument("--order", type=int, required=True, help="Truncation order K")
    parser.add_argument("--epsilon", type=int, choices=[-1, 1], default=-1)
    parser.add_argument("--sweep", type=int, default=None, help="All symbolic (l1,l2) up to N")
    parser.add_argument("--random", type=int, default=None, help="N random power-series inputs")
    parser.add_argument("--jmax", type=int, default=4, help="Series length for --random (default: 4)")
    add_run_args(parser, ["json"])
    parsed = parser.parse_args(args)
    if parsed.order < 1:
        parser.error(f"--order must be >= 1, got {parsed.order}")
    workers = workers_from_args(parser, parsed)
    cases = _cases(parser, parsed)

    t0 = time.monotonic()
    results = []
    for label, data in cases:
        result = check_case(label, data, parsed.order, parsed.epsilon, workers)
        status = "PASS" if result["passed"] else "FAIL"
        progress(f"  {status}  {label}", parsed.quiet)
        results.append(result)
    passed = sum(r["passed"] for r in results)
    elapsed = time.monotonic() - t0

    text = dumps_json({
        "schema_version": SCHEMA_VERSION,
        "order": str(parsed.order),
        "cases": results,
        "passed": passed == len(results),
    })
    write_output(text, parsed.output)
    progress(f"Done: {passed}/{len(results)} cases passed ({elapsed:.1f}s)", parsed.quiet)
    if passed != len(results):
        sys.exit(1)


if __name__ == "__main__":
    main()
