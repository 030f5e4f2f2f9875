"""CLI for wall functions, completed diagrams and GW tables.

Initial data is given either as expressions (--p1 in x, --p2 in y) or
as symbolic degrees (--l1, --l2) for fully generic coefficients.

Usage:
    # One ray from the tight-grading formula
    tightscatter wallfn --a 2 --b 1 --order 9 \
        --p1 "1+p[1,1]*x+p[1,2]*x^2+p[1,3]*x^3" --p2 "1+p[2,1]*y"

    # The whole completion, by either method
    tightscatter scatter --p1 "1+x^3" --p2 "1+y^2" --order 20 --method oracle

    # GW numbers for P1 = (1+s*x)^2, P2 = (1+t*y)^2
    tightscatter gw --l1 2 --l2 2 --a 1 --b 1 --kmax 4
    tightscatter gw --l1 2 --l2 2 --sweep --order 8 --format csv --output gw.csv
"""

import argparse
import time

from .common import default_workers, dumps_json, progress, write_output
from .polyexpr import PolyExprError, initial_data_from_exprs
from .scattering import (
    SCHEMA_VERSION,
    InitialData,
    diagram_to_dict,
    ks_complete,
    tight_diagram,
    wall_function_tight,
    wall_to_dict,
)

ORACLE = "oracle"
TIGHT = "tight"
VALID_METHODS = {ORACLE, TIGHT}


# ── Shared argument handling ──────────────────────────────────────


def add_data_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("initial data")
    group.add_argument("--p1", help='P1 in x, e.g. "1+p[1,1]*x+p[1,3]*x^3"')
    group.add_argument("--p2", help='P2 in y, e.g. "(1+t*y)^2"')
    group.add_argument("--l1", type=int, help="Degree of symbolic P1 (instead of --p1)")
    group.add_argument("--l2", type=int, help="Degree of symbolic P2 (instead of --p2)")


def data_from_args(parser: argparse.ArgumentParser, parsed) -> InitialData:
    """InitialData from --p1/--p2 or --l1/--l2; usage errors exit with 2."""
    if parsed.p1 is not None or parsed.p2 is not None:
        if parsed.p1 is None or parsed.p2 is None:
            parser.error("--p1 and --p2 must be given together")
        if parsed.l1 is not None or parsed.l2 is not None:
            parser.error("Cannot mix --p1/--p2 with --l1/--l2")
        try:
            return initial_data_from_exprs(parsed.p1, parsed.p2)
        except PolyExprError as exc:
            parser.error(str(exc))
    if parsed.l1 is None or parsed.l2 is None:
        parser.error("Give initial data as --p1/--p2 or --l1/--l2")
    if parsed.l1 < 0 or parsed.l2 < 0:
        parser.error("--l1 and --l2 must be >= 0")
    return InitialData.symbolic(parsed.l1, parsed.l2)


def add_run_args(parser: argparse.ArgumentParser, formats: list[str]) -> None:
    parser.add_argument(
        "--format", choices=formats, default=formats[0],
        help=f"Output format (default: {formats[0]})",
    )
    parser.add_argument("--output", default=None, help="Output file (default: stdout)")
    parser.add_argument(
        "--workers", type=int, default=None,
        help="Parallel worker processes (default: $TIGHTSCATTER_WORKERS or 1)",
    )
    parser.add_argument("--quiet", action="store_true", help="Suppress progress on stderr")


def workers_from_args(parser: argparse.ArgumentParser, parsed) -> int:
    try:
        workers = parsed.workers if parsed.workers is not None else default_workers()
    except ValueError as exc:
        parser.error(str(exc))
    if workers < 1:
        parser.error(f"--workers must be >= 1, got {workers}")
    return workers


def _check_order(parser: argparse.ArgumentParser, order: int) -> None:
    if order < 1:
        parser.error(f"--order must be >= 1, got {order}")


# ── wallfn ─────────────────────────────────────────────────────────


def wallfn_main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter wallfn",
        description="Wall function of one ray from weighted tight gradings.",
    )
    add_data_args(parser)
    parser.add_argument("--a", type=int, required=True, help="Ray direction, x component")
    parser.add_argument("--b", type=int, required=True, help="Ray direction, y component")
    parser.add_argument("--order", type=int, required=True, help="Truncation order K")
    parser.add_argument(
        "--epsilon", type=int, choices=[-1, 1], default=-1,
        help="Sign of the tight domain (default: -1)",
    )
    add_run_args(parser, ["json", "text"])
    parsed = parser.parse_args(args)
    _check_order(parser, parsed.order)
    data = data_from_args(parser, parsed)
    workers = workers_from_args(parser, parsed)

    try:
        wall = wall_function_tight(parsed.a, parsed.b, data, parsed.order, parsed.epsilon, workers)
    except ValueError as exc:
        parser.error(str(exc))

    if parsed.format == "text":
        text = str(wall) + "\n"
    else:
        text = dumps_json({
            "schema_version": SCHEMA_VERSION,
            "order": str(parsed.order),
            "epsilon": str(parsed.epsilon),
            "wall": wall_to_dict(wall),
        })
    write_output(text, parsed.output)
    if parsed.output:
        progress(f"Done: {parsed.output}", parsed.quiet)


# ── scatter ────────────────────────────────────────────────────────


def scatter_main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter scatter",
        description="Consistent completion of the initial lines up to order K.",
    )
    add_data_args(parser)
    parser.add_argument("--order", type=int, required=True, help="Truncation order K")
    parser.add_argument(
        "--method", choices=sorted(VALID_METHODS), default=ORACLE,
        help="oracle: order-by-order correction; tight: closed formula (default: oracle)",
    )
    parser.add_argument(
        "--loop-start", type=int, default=0,
        help="Rotate the loop base point (oracle only)",
    )
    add_run_args(parser, ["json", "text"])
    parsed = parser.parse_args(args)
    _check_order(parser, parsed.order)
    data = data_from_args(parser, parsed)
    workers = workers_from_args(parser, parsed)

    t0 = time.monotonic()
    if parsed.method == ORACLE:
        d = ks_complete(
            data, parsed.order, parsed.loop_start,
            progress=lambda deg, k: progress(f"  degree {deg}/{k}", parsed.quiet),
        )
    else:
        d = tight_diagram(
            data, parsed.order, workers=workers,
            progress=lambda w: progress(f"  ray {w}", parsed.quiet),
        )
    elapsed = time.monotonic() - t0
    progress(f"Completed {len(d.rays)} rays at order {parsed.order} ({elapsed:.1f}s)", parsed.quiet)

    if parsed.format == "text":
        text = "".join(f"{w}\n" for w in d.walls())
    else:
        text = dumps_json(diagram_to_dict(d))
    write_output(text, parsed.output)
    if parsed.output:
        progress(f"Done: {parsed.output}", parsed.quiet)


# ── gw ─────────────────────────────────────────────────────────────


def gw_main(args=None):
    from .gw import VALID_GW_METHODS, gw_extract, gw_sweep, tables_to_csv, tables_to_dict

    parser = argparse.ArgumentParser(
        prog="tightscatter gw",
        description="Relative GW numbers from the log of binomial ray functions.",
    )
    parser.add_argument("--l1", type=int, required=True, help="P1 = (1+s*x)^l1")
    parser.add_argument("--l2", type=int, required=True, help="P2 = (1+t*y)^l2")
    parser.add_argument("--a", type=int, default=None, help="Ray direction, x component")
    parser.add_argument("--b", type=int, default=None, help="Ray direction, y component")
    parser.add_argument("--kmax", type=int, default=4, help="Multiples k to report (default: 4)")
    parser.add_argument("--sweep", action="store_true", help="Every direction with a+b <= --order")
    parser.add_argument("--order", type=int, default=None, help="Order for --sweep")
    parser.add_argument(
        "--method", choices=sorted(VALID_GW_METHODS), default="tight",
        help="How ray functions are computed (default: tight)",
    )
    add_run_args(parser, ["json", "csv"])
    parsed = parser.parse_args(args)
    if parsed.l1 < 0 or parsed.l2 < 0:
        parser.error("--l1 and --l2 must be >= 0")
    workers = workers_from_args(parser, parsed)

    if parsed.sweep:
        if parsed.a is not None or parsed.b is not None:
            parser.error("--sweep cannot be combined with --a/--b")
        if parsed.order is None:
            parser.error("--sweep requires --order")
        _check_order(parser, parsed.order)
        tables = gw_sweep(parsed.l1, parsed.l2, parsed.order, parsed.method, workers)
    else:
        if parsed.a is None or parsed.b is None:
            parser.error("Give --a and --b, or --sweep with --order")
        try:
            tables = [gw_extract(
                parsed.l1, parsed.l2, parsed.a, parsed.b, parsed.kmax, parsed.method, workers,
            )]
        except ValueError as exc:
            parser.error(str(exc))

    text = tables_to_csv(tables) if parsed.format == "csv" else dumps_json(tables_to_dict(tables))
    write_output(text, parsed.output)
    if parsed.output:
        progress(f"Done: {len(tables)} tables in {parsed.output}", parsed.quiet)
