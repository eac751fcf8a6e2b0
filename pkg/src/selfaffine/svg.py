"""Minimal SVG writer for polylines and polygons."""

from __future__ import annotations

import math
from typing import Iterable, Sequence
from xml.sax.saxutils import quoteattr

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render(
    paths: Sequence[tuple[Sequence[Sequence[float]], dict]],
    size: int = 800,
    margin: float = 0.05,
) -> str:
    """SVG document with one ``<path>`` per entry; the y axis points up.

    Each entry is ``(points, attrs)``; ``attrs`` may hold ``fill``, ``stroke``,
    ``closed`` and ``label``. The viewBox is the bounding box enlarged by
    ``margin`` on every side and strokes are 0.2% of its diagonal.
    """
    pts = [(float(p[0]), float(p[1])) for ps, _ in paths for p in ps]
    if not pts:
        xmin = ymin = 0.0
        xmax = ymax = 1.0
    else:
        xs, ys = zip(*pts)
        xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    w = max(xmax - xmin, 1e-12)
    h = max(ymax - ymin, 1e-12)
    mx, my = w * margin, h * margin
    vx, vy = xmin - mx, -(ymax + my)
    vw, vh = w + 2 * mx, h + 2 * my
    stroke = 0.002 * math.hypot(vw, vh)
    height = max(1, round(size * vh / vw))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
    ]
    for k, (ps, attrs) in enumerate(paths):
        if len(ps) == 0:
            continue
        d = "M " + " L ".join(f"{_fmt(p[0])} {_fmt(-p[1])}" for p in ps)
        if attrs.get("closed", True):
            d += " Z"
        color = attrs.get("stroke", PALETTE[k % len(PALETTE)])
        fill = attrs.get("fill", "none")
        extra = f" data-label={quoteattr(str(attrs['label']))}" if "label" in attrs else ""
        out.append(
            f'<path d="{d}" fill="{fill}" stroke="{color}" '
            f'stroke-width="{_fmt(stroke)}" stroke-linejoin="round"{extra}/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write(path: str, paths: Iterable, **kw) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(render(list(paths), **kw))
