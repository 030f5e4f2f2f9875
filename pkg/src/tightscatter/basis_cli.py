"""CLI for greedy elements, theta functions and cluster variables.

Usage:
    tightscatter greedy --a1 2 --a2 1 --l1 2 --l2 2
    tightscatter theta --m0 -2 -1 --l1 2 --l2 2 --order 12 --lines
    tightscatter clustervar --k 5 --p1 "1+x^2" --p2 "1+y^2" --normalize
"""

import argparse
from fractions import Fraction

from .broken_lines import (
    broken_line_to_dict,
    enumerate_broken_lines,
    generic_endpoint,
    sum_broken_lines,
)
from .cli import add_data_args, add_run_args, data_from_args, workers_from_args
from .common import dumps_json, progress, write_output
from .greedy import (
    ClusterSeedConfig,
    cluster_variable,
    d_vector,
    greedy_element,
    normalize_cluster_variable,
)
from .laurent import LaurentPolynomial, laurent_to_dict
from .scattering import SCHEMA_VERSION, ks_complete


def _seed_from_args(parser: argparse.ArgumentParser, parsed) -> ClusterSeedConfig:
    try:
        return ClusterSeedConfig(data_from_args(parser, parsed))
    except ValueError as exc:
        parser.error(str(exc))


def _emit(parsed, z: LaurentPolynomial, extra: dict) -> None:
    if parsed.format == "text":
        text = f"{z}\n"
    else:
        text = dumps_json({"schema_version": SCHEMA_VERSION, **extra, **laurent_to_dict(z)})
    write_output(text, parsed.output)
    if parsed.output:
        progress(f"Done: {parsed.output}", parsed.quiet)


def _parse_point(parser: argparse.ArgumentParser, text: str) -> tuple[Fraction, Fraction]:
    try:
        qx, qy = (Fraction(part.strip()) for part in text.split(","))
    except ValueError:
        parser.error(f"--q must be 'x,y' with rational coordinates, got '{text}'")
    return qx, qy


# ── greedy ─────────────────────────────────────────────────────────


def greedy_main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter greedy",
        description="Greedy element x[a1,a2] from compatible gradings.",
    )
    add_data_args(parser)
    parser.add_argument("--a1", type=int, required=True)
    parser.add_argument("--a2", type=int, required=True)
    add_run_args(parser, ["json", "text"])
    parsed = parser.parse_args(args)
    cfg = _seed_from_args(parser, parsed)
    workers = workers_from_args(parser, parsed)

    z = greedy_element(parsed.a1, parsed.a2, cfg, workers)
    _emit(parsed, z, {"element": [str(parsed.a1), str(parsed.a2)]})


# ── theta ──────────────────────────────────────────────────────────


def theta_main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter theta",
        description="Theta function as a sum over broken lines in the completed diagram.",
    )
    add_data_args(parser)
    parser.add_argument("--m0", type=int, nargs=2, required=True, metavar=("M1", "M2"))
    parser.add_argument("--order", type=int, required=True, help="Truncation order K")
    parser.add_argument("--q", default=None, help="Endpoint 'x,y' (default: generic)")
    parser.add_argument("--lines", action="store_true", help="Include every broken line")
    add_run_args(parser, ["json", "text"])
    parsed = parser.parse_args(args)
    if parsed.order < 1:
        parser.error(f"--order must be >= 1, got {parsed.order}")
    data = data_from_args(parser, parsed)
    workers = workers_from_args(parser, parsed)

    progress(f"Completing diagram to order {parsed.order}", parsed.quiet)
    d = ks_complete(data, parsed.order)
    q = generic_endpoint(d) if parsed.q is None else _parse_point(parser, parsed.q)
    try:
        lines = enumerate_broken_lines(d, parsed.m0, q, parsed.order, workers)
    except ValueError as exc:
        parser.error(str(exc))
    progress(f"  {len(lines)} broken lines", parsed.quiet)

    extra = {
        "m0": [str(x) for x in parsed.m0],
        "endpoint": [str(q[0]), str(q[1])],
        "order": str(parsed.order),
    }
    if parsed.lines:
        extra["broken_lines"] = [broken_line_to_dict(bl) for bl in lines]
    _emit(parsed, sum_broken_lines(lines), extra)


# ── clustervar ─────────────────────────────────────────────────────


def clustervar_main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter clustervar",
        description="Cluster pre-variable x_k, optionally normalized to X_k.",
    )
    add_data_args(parser)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--normalize", action="store_true", help="Rescale to X_k")
    add_run_args(parser, ["json", "text"])
    parsed = parser.parse_args(args)
    cfg = _seed_from_args(parser, parsed)

    try:
        x = cluster_variable(parsed.k, cfg)
    except ValueError as exc:
        parser.error(str(exc))
    extra = {"k": str(parsed.k)}
    if parsed.normalize:
        norm = normalize_cluster_variable(x, cfg, parsed.k)
        x = norm.value
        extra["scale"] = [str(norm.a), str(norm.b)]
    extra["d_vector"] = [str(v) for v in d_vector(x)]
    _emit(parsed, x, extra)
