"""SVG figures of packings.

The unit square maps to a 1000 x 1000 viewBox with the y axis flipped, so
the origin sits bottom-left.  Only packing rectangles are emitted as
``<rect>`` elements (the frame is a ``<path>``), which keeps the output easy
to parse back.  Output is byte-for-byte deterministic.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .geometry import Packing, staircase_region

SIZE = 1000
PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
           "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


def _n(v) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass(frozen=True)
class SvgFigure:
    text: str

    def __str__(self) -> str:
        return self.text

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.text)


def render(p: Packing, staircase: bool = False, hyperbola: float | None = None,
           title: str | None = None) -> SvgFigure:
    """Draw ``p``; optionally outline the staircase and the curve x*y = ``hyperbola``."""
    f = p.config.frame
    w, h = f.width, f.height

    def X(v):
        return (v - f.x0) / w * SIZE

    def Y(v):
        return SIZE - (v - f.y0) / h * SIZE

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {SIZE} {SIZE}" '
        f'width="{SIZE}" height="{SIZE}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    for i, r in enumerate(p.rects):
        if r.area == 0:
            continue
        out.append(
            f'<rect x="{_n(X(r.x0))}" y="{_n(Y(r.top))}" width="{_n(X(r.right) - X(r.x0))}" '
            f'height="{_n(Y(r.y0) - Y(r.top))}" fill="{PALETTE[i % len(PALETTE)]}" '
            f'fill-opacity="0.4" stroke="#333333" stroke-width="1"/>')
    if staircase:
        cells = staircase_region(p.config).cells
        d = " ".join(f"M{_n(X(c.x0))} {_n(Y(c.y0))} H{_n(X(c.right))} V{_n(Y(c.top))} "
                     f"H{_n(X(c.x0))} Z" for c in cells if c.area > 0)
        if d:
            out.append(f'<path d="{d}" fill="none" stroke="#000000" stroke-width="3" '
                       f'stroke-dasharray="12 6"/>')
    if hyperbola is not None and hyperbola > 0:
        c = float(hyperbola)
        pts = []
        steps = 200
        for k in range(steps + 1):
            x = c + (1 - c) * k / steps
            pts.append(f"{_n(X(x))},{_n(Y(c / x))}")
        out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="#d62728" '
                   f'stroke-width="2"/>')
    out.append(f'<path d="M0 0 H{SIZE} V{SIZE} H0 Z" fill="none" stroke="#000000" stroke-width="2"/>')
    for q in p.config.points:
        out.append(f'<circle cx="{_n(X(q.x))}" cy="{_n(Y(q.y))}" r="6" fill="#000000"/>')
    out.append("</svg>")
    return SvgFigure("\n".join(out) + "\n")


def rect_area_from_svg(text: str) -> float:
    """Total area (as a fraction of the viewBox) of the ``<rect>`` elements in ``text``."""
    root = ET.fromstring(text)
    total = 0.0
    for el in root.iter():
        if el.tag.endswith("rect"):
            total += float(el.get("width")) * float(el.get("height"))
    return total / (SIZE * SIZE)
