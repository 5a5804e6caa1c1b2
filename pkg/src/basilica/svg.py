"""Deterministic SVG chord diagrams."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

SIZE = 400
RADIUS = 180


def _point(x: Fraction, period: int) -> tuple[str, str]:
    t = 2 * math.pi * float(Fraction(x) / period)
    c = SIZE / 2
    return f"{c + RADIUS * math.cos(t):.4f}", f"{c - RADIUS * math.sin(t):.4f}"


def render_svg(chords: Iterable[tuple], period: int = 2, out: str | None = None) -> str:
    """Chords as segments inside the unit circle; ``chords`` holds endpoint pairs on R/period."""
    c = SIZE / 2
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<circle cx="{c:.4f}" cy="{c:.4f}" r="{RADIUS:.4f}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for a, b in sorted((Fraction(a), Fraction(b)) for a, b in chords):
        x1, y1 = _point(a, period)
        x2, y2 = _point(b, period)
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="0.5"/>')
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
