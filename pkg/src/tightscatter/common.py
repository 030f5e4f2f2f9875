"""tightscatter.common: shared CLI and rendering utilities.

Contains: worker-count defaults, ${var} path resolution, deterministic
JSON output, progress printing, color parsing and font loading.
"""

from __future__ import annotations

import json
import os
import re
import sys
from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

# ── Environment ────────────────────────────────────────────────────
# Read on each call so monkeypatched env vars are picked up in tests.

WORKERS_ENV = "TIGHTSCATTER_WORKERS"
FONT_ENV = "TIGHTSCATTER_FONT"


def default_workers() -> int:
    """Worker count from TIGHTSCATTER_WORKERS, else 1.

    Raises:
        ValueError: The variable is set but not a positive integer.
    """
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got '{raw}'") from None
    if value < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got '{raw}'")
    return value


def _font_paths() -> list[Path]:
    paths = []
    env_font = os.environ.get(FONT_ENV)
    if env_font:
        paths.append(Path(env_font))
    paths.append(Path("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"))
    return paths


# ── Paths ──────────────────────────────────────────────────────────


def resolve_path_vars(text: str, paths: dict[str, str]) -> str:
    """Replace ${name} variables in a string using the paths dict."""
    def _replace(match):
        key = match.group(1)
        if key not in paths:
            raise ValueError(f"Unknown path variable: ${{{key}}}")
        return paths[key]
    return re.sub(r"\$\{(\w+)\}", _replace, text)


# ── Output ─────────────────────────────────────────────────────────


def dumps_json(obj) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_output(text: str, output: str | Path | None) -> None:
    """Write text to output, or to stdout when output is None."""
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def progress(message: str, quiet: bool = False) -> None:
    """Progress line on stderr, so stdout stays clean for JSON."""
    if not quiet:
        print(message, file=sys.stderr, flush=True)


# ── Colors ─────────────────────────────────────────────────────────


def parse_hex_color(hex_str: str) -> tuple[int, int, int]:
    """Convert '#RRGGBB' or 'RRGGBB' string to (R, G, B) tuple.

    Raises:
        ValueError: Not six hex digits.
    """
    digits = hex_str.lstrip("#")
    if len(digits) != 6 or any(c not in "0123456789abcdefABCDEF" for c in digits):
        raise ValueError(f"Invalid hex color: '{hex_str}'")
    return (int(digits[0:2], 16), int(digits[2:4], 16), int(digits[4:6], 16))


def resolve_color(
    value: str, palette: dict[str, tuple[int, int, int]],
) -> tuple[int, int, int]:
    """Resolve a palette key name or an inline '#RRGGBB'."""
    if value in palette:
        return palette[value]
    if value.startswith("#") or len(value) == 6:
        return parse_hex_color(value)
    raise ValueError(
        f"Unknown color: '{value}'. Not in palette and not a hex value. "
        f"Valid: {sorted(palette)}"
    )


def hex_color(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


# ── Fonts and text ─────────────────────────────────────────────────


def load_font(size: int) -> ImageFont.FreeTypeFont | ImageFont.ImageFont:
    """Load a font: TIGHTSCATTER_FONT -> DejaVu Sans -> Pillow default."""
    for font_path in _font_paths():
        if font_path.exists():
            try:
                return ImageFont.truetype(str(font_path), size=size)
            except OSError:
                continue
    return ImageFont.load_default()


def draw_label(
    img: Image.Image,
    text: str,
    position: tuple[int, int],
    font,
    color: tuple[int, int, int],
) -> int:
    """Draw text on a Pillow image and return its height in pixels."""
    draw = ImageDraw.Draw(img)
    draw.text(position, text, fill=color, font=font)
    bbox = draw.textbbox((0, 0), text, font=font)
    return bbox[3] - bbox[1]
