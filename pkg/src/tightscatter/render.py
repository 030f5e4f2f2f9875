"""tightscatter.render: SVG and PNG figures of tilings and ray fans.

Tiling of a grading on P(m,n): above each positively graded horizontal
edge u a blue column of |sh(u)| unit cells; left of each positively
graded vertical edge v a red row of |sh(v)| unit cells. Columns wrap
vertically and rows wrap horizontally on the m x n torus. Cells covered
more than once are highlighted. Compatibility is always decided by
grading.is_compatible; the picture only visualizes it.

Ray fan: the initial lines through the origin and every ray
R_{<=0}(a,b) of a diagram, labeled by direction.

Usage:
    svg = render_tiling_svg(grading)
    render_tiling_png(grading, "tiling.png")
    render_fan_png(diagram, "fan.png")
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from .common import draw_label, hex_color, load_font, parse_hex_color, resolve_color
from .dyck import DyckPath
from .grading import Grading, local_shadow
from .scattering import LINE, ScatteringDiagram

DEFAULT_COLORS = {
    "background": "#ffffff",
    "grid": "#dddddd",
    "diagonal": "#999999",
    "path": "#222222",
    "blue": "#4a78c2",
    "red": "#d0494a",
    "overlap": "#f2c14e",
    "line": "#222222",
    "ray": "#4a78c2",
    "label": "#222222",
}
VALID_COLOR_KEYS = set(DEFAULT_COLORS)

CELL_PX = 40
MARGIN_PX = 30
FAN_SIZE_PX = 600


def palette(overrides: dict[str, str] | None = None) -> dict[str, tuple[int, int, int]]:
    """DEFAULT_COLORS with overrides applied, as RGB tuples.

    Raises:
        ValueError: Unknown key or bad color value.
    """
    colors = {k: parse_hex_color(v) for k, v in DEFAULT_COLORS.items()}
    for key, value in (overrides or {}).items():
        if key not in VALID_COLOR_KEYS:
            raise ValueError(f"Unknown color key '{key}'. Valid: {sorted(VALID_COLOR_KEYS)}")
        colors[key] = resolve_color(value, colors)
    return colors


# ── Tiling layout ──────────────────────────────────────────────────


@dataclass(frozen=True)
class TilingLayout:
    path: DyckPath
    blue: tuple[tuple[int, int], ...]   # cells (x, y), lower-left corners
    red: tuple[tuple[int, int], ...]
    coverage: np.ndarray                # shape (n, m), cover count per cell

    @property
    def overlap_cells(self) -> list[tuple[int, int]]:
        ys, xs = np.nonzero(self.coverage > 1)
        return sorted(zip(xs.tolist(), ys.tolist()))


def tiling_layout(g: Grading) -> TilingLayout:
    path = g.path
    m, n = path.m, path.n
    coverage = np.zeros((max(n, 1), max(m, 1)), dtype=np.int32)
    blue: list[tuple[int, int]] = []
    red: list[tuple[int, int]] = []
    for e in path.edges:
        if g[e] <= 0:
            continue
        size = len(local_shadow(g, e))
        x0, y0 = e.anchor
        if e.is_horizontal:
            cells = [(x0, (y0 + j) % n) for j in range(size)] if n else []
            blue.extend(cells)
        else:
            cells = [((x0 - 1 - i) % m, y0 - 1) for i in range(size)] if m else []
            red.extend(cells)
        for x, y in cells:
            coverage[y, x] += 1
    return TilingLayout(path, tuple(blue), tuple(red), coverage)


# ── Tiling output ──────────────────────────────────────────────────


def _svg_rect(x: float, y: float, w: float, h: float, fill: str, opacity: float = 1.0) -> str:
    return (
        f'<rect x="{x:g}" y="{y:g}" width="{w:g}" height="{h:g}" '
        f'fill="{fill}" fill-opacity="{opacity:g}"/>'
    )


def _svg_line(x1, y1, x2, y2, stroke: str, width: float = 1.0, dash: str | None = None) -> str:
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
        f'stroke="{stroke}" stroke-width="{width:g}"{extra}/>'
    )


def _svg_doc(width: int, height: int, body: list[str], background: str) -> str:
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        _svg_rect(0, 0, width, height, background),
        *body,
        "</svg>",
    ]) + "\n"


def render_tiling_svg(g: Grading, cell: int = CELL_PX, colors: dict | None = None) -> str:
    rgb = palette(colors)
    layout = tiling_layout(g)
    m, n = g.path.m, g.path.n
    width, height = m * cell + 2 * MARGIN_PX, n * cell + 2 * MARGIN_PX

    def _px(x, y):
        # y grows upward in lattice coordinates
        return MARGIN_PX + x * cell, MARGIN_PX + (n - y) * cell

    body = []
    for x in range(m + 1):
        body.append(_svg_line(*_px(x, 0), *_px(x, n), hex_color(rgb["grid"])))
    for y in range(n + 1):
        body.append(_svg_line(*_px(0, y), *_px(m, y), hex_color(rgb["grid"])))
    body.append(_svg_line(*_px(0, 0), *_px(m, n), hex_color(rgb["diagonal"]), dash="4 4"))
    for cells, key in ((layout.blue, "blue"), (layout.red, "red")):
        for x, y in cells:
            px, py = _px(x, y + 1)
            body.append(_svg_rect(px, py, cell, cell, hex_color(rgb[key]), 0.55))
    for x, y in layout.overlap_cells:
        px, py = _px(x, y + 1)
        body.append(_svg_rect(px, py, cell, cell, hex_color(rgb["overlap"]), 0.9))
    verts = g.path.vertices()
    for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
        body.append(_svg_line(*_px(x1, y1), *_px(x2, y2), hex_color(rgb["path"]), 3))
    for e in g.path.edges:
        if g[e] <= 0:
            continue
        x0, y0 = e.anchor
        lx, ly = (x0 + 0.5, y0) if e.is_horizontal else (x0, y0 - 0.5)
        px, py = _px(lx, ly)
        body.append(
            f'<text x="{px:g}" y="{py + 14:g}" font-size="12" text-anchor="middle" '
            f'fill="{hex_color(rgb["label"])}">{g[e]}</text>'
        )
    return _svg_doc(width, height, body, hex_color(rgb["background"]))


def render_tiling_png(
    g: Grading, output: str | Path, cell: int = CELL_PX, colors: dict | None = None,
) -> Path:
    rgb = palette(colors)
    layout = tiling_layout(g)
    m, n = g.path.m, g.path.n
    width, height = m * cell + 2 * MARGIN_PX, n * cell + 2 * MARGIN_PX
    img = Image.new("RGB", (width, height), rgb["background"])
    draw = ImageDraw.Draw(img)

    def _px(x, y):
        return MARGIN_PX + x * cell, MARGIN_PX + (n - y) * cell

    for x in range(m + 1):
        draw.line([_px(x, 0), _px(x, n)], fill=rgb["grid"], width=1)
    for y in range(n + 1):
        draw.line([_px(0, y), _px(m, y)], fill=rgb["grid"], width=1)
    draw.line([_px(0, 0), _px(m, n)], fill=rgb["diagonal"], width=1)
    for cells, key in ((layout.blue, "blue"), (layout.red, "red")):
        for x, y in cells:
            x0, y0 = _px(x, y + 1)
            draw.rectangle([x0 + 1, y0 + 1, x0 + cell - 1, y0 + cell - 1], fill=rgb[key])
    for x, y in layout.overlap_cells:
        x0, y0 = _px(x, y + 1)
        draw.rectangle([x0 + 1, y0 + 1, x0 + cell - 1, y0 + cell - 1], fill=rgb["overlap"])
    draw.line([_px(*v) for v in g.path.vertices()], fill=rgb["path"], width=3)
    font = load_font(max(10, cell // 3))
    for e in g.path.edges:
        if g[e] > 0:
            x0, y0 = e.anchor
            lx, ly = (x0 + 0.5, y0) if e.is_horizontal else (x0, y0 - 0.5)
            px, py = _px(lx, ly)
            draw_label(img, str(g[e]), (int(px) + 2, int(py) + 2), font, rgb["label"])

    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    img.save(path)
    return path


# ── Ray fan ────────────────────────────────────────────────────────


def fan_segments(d: ScatteringDiagram, size: int = FAN_SIZE_PX) -> list[tuple[str, tuple[int, int], tuple[float, float], tuple[float, float]]]:
    """(kind, direction, start, end) in pixel coordinates, origin at the center."""
    center = size / 2
    radius = size / 2 - MARGIN_PX
    out = []
    for wall in d.walls():
        a, b = wall.direction
        norm = float(np.hypot(a, b))
        ux, uy = a / norm, b / norm
        tip = (center - radius * ux, center + radius * uy)
        if wall.kind == LINE:
            start = (center + radius * ux, center - radius * uy)
        else:
            start = (center, center)
        out.append((wall.kind, wall.direction, start, tip))
    return out


def render_fan_svg(d: ScatteringDiagram, size: int = FAN_SIZE_PX, colors: dict | None = None) -> str:
    rgb = palette(colors)
    body = []
    for kind, (a, b), start, end in fan_segments(d, size):
        color = hex_color(rgb["line" if kind == LINE else "ray"])
        body.append(_svg_line(*start, *end, color, 2 if kind == LINE else 1.5))
        body.append(
            f'<text x="{end[0]:g}" y="{end[1]:g}" font-size="10" '
            f'fill="{hex_color(rgb["label"])}">({a},{b})</text>'
        )
    return _svg_doc(size, size, body, hex_color(rgb["background"]))


def render_fan_png(
    d: ScatteringDiagram, output: str | Path, size: int = FAN_SIZE_PX, colors: dict | None = None,
) -> Path:
    rgb = palette(colors)
    img = Image.new("RGB", (size, size), rgb["background"])
    draw = ImageDraw.Draw(img)
    font = load_font(11)
    for kind, (a, b), start, end in fan_segments(d, size):
        draw.line([start, end], fill=rgb["line" if kind == LINE else "ray"], width=2 if kind == LINE else 1)
        draw_label(img, f"({a},{b})", (int(end[0]), int(end[1])), font, rgb["label"])
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    img.save(path)
    return path
