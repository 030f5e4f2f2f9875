"""CLI for rendering grading tilings and ray fans.

Usage:
    # Tiling of a grading on P(7,4)
    tightscatter render tiling --m 7 --n 4 --grading "u2=2,v3=1" --output tiling.svg

    # Ray fan of a completed diagram, computed or loaded from `scatter` JSON
    tightscatter render fan --p1 "1+x^3" --p2 "1+y^2" --order 12 --output fan.png
    tightscatter render fan --diagram diagram.json --output fan.svg
"""

import argparse
import json
from pathlib import Path

from .cli import add_data_args, data_from_args
from .common import progress, write_output
from .dyck import build_maximal_dyck_path
from .grading import is_compatible, parse_grading
from .render import (
    render_fan_png,
    render_fan_svg,
    render_tiling_png,
    render_tiling_svg,
)
from .scattering import diagram_from_dict, ks_complete

VALID_TARGETS = {"tiling", "fan"}
VALID_FORMATS = {"svg", "png"}


def _format_for(parser: argparse.ArgumentParser, parsed) -> str:
    fmt = parsed.format
    if fmt is None:
        suffix = Path(parsed.output).suffix.lstrip(".").lower() if parsed.output else "svg"
        fmt = suffix if suffix in VALID_FORMATS else "svg"
    if fmt == "png" and not parsed.output:
        parser.error("PNG output requires --output")
    return fmt


def _colors(parser: argparse.ArgumentParser, items: list[str]) -> dict[str, str]:
    out = {}
    for item in items or []:
        if "=" not in item:
            parser.error(f"--color expects key=#RRGGBB, got '{item}'")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter render",
        description="Render a grading tiling or a diagram's ray fan as SVG or PNG.",
    )
    parser.add_argument("target", choices=sorted(VALID_TARGETS))
    parser.add_argument("--m", type=int, default=None, help="Tiling: path width")
    parser.add_argument("--n", type=int, default=None, help="Tiling: path height")
    parser.add_argument("--grading", default=None, help="Tiling: e.g. 'u1=2,v3=3'")
    add_data_args(parser)
    parser.add_argument("--order", type=int, default=None, help="Fan: truncation order")
    parser.add_argument("--diagram", default=None, help="Fan: diagram JSON from `scatter`")
    parser.add_argument("--format", choices=sorted(VALID_FORMATS), default=None,
                        help="Default: from --output suffix, else svg")
    parser.add_argument("--output", default=None, help="Output file (SVG may go to stdout)")
    parser.add_argument("--color", action="append", default=None,
                        help="Color override key=#RRGGBB (repeatable)")
    parser.add_argument("--quiet", action="store_true", help="Suppress progress on stderr")
    parsed = parser.parse_args(args)
    fmt = _format_for(parser, parsed)
    colors = _colors(parser, parsed.color)

    try:
        if parsed.target == "tiling":
            if parsed.m is None or parsed.n is None or parsed.grading is None:
                parser.error("tiling requires --m, --n and --grading")
            g = parse_grading(parsed.grading, build_maximal_dyck_path(parsed.m, parsed.n))
            progress(f"Grading on P({parsed.m},{parsed.n}): "
                     f"{'compatible' if is_compatible(g) else 'not compatible'}", parsed.quiet)
            if fmt == "png":
                render_tiling_png(g, parsed.output, colors=colors)
            else:
                write_output(render_tiling_svg(g, colors=colors), parsed.output)
        else:
            if parsed.diagram is not None:
                path = Path(parsed.diagram)
                if not path.exists():
                    raise FileNotFoundError(f"Diagram file not found: {path}")
                d = diagram_from_dict(json.loads(path.read_text()))
            else:
                if parsed.order is None:
                    parser.error("fan requires --diagram or initial data with --order")
                d = ks_complete(data_from_args(parser, parsed), parsed.order)
            if fmt == "png":
                render_fan_png(d, parsed.output, colors=colors)
            else:
                write_output(render_fan_svg(d, colors=colors), parsed.output)
    except ValueError as exc:
        parser.error(str(exc))

    if parsed.output:
        progress(f"Done: {parsed.output}", parsed.quiet)


if __name__ == "__main__":
    main()
