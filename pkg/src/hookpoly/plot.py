"""Deterministic SVG scatter plots of zero sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SIZE = 600
PAD = 40


@dataclass
class PlotSpec:
    points: list[tuple[float, float]]
    window: dict = field(default_factory=dict)  # xmin xmax ymin ymax rmin rmax
    marker_radius: float = 3.0
    title: str = ""
    unit_circle: bool = False

    def __post_init__(self):
        if self.marker_radius <= 0:
            raise ValueError("marker_radius must be positive")
        for x, y in self.points:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("points must be finite")
        for k in self.window:
            if k not in ("xmin", "xmax", "ymin", "ymax", "rmin", "rmax"):
                raise ValueError("unknown window key %r" % k)


def _fmt(x: float) -> str:
    # fixed decimals keep the byte stream stable across platforms
    s = "%.3f" % x
    return "0.000" if s == "-0.000" else s


def visible_points(spec: PlotSpec) -> list[tuple[float, float]]:
    w = spec.window
    out = []
    for x, y in spec.points:
        r = math.hypot(x, y)
        if "xmin" in w and x < w["xmin"] or "xmax" in w and x > w["xmax"]:
            continue
        if "ymin" in w and y < w["ymin"] or "ymax" in w and y > w["ymax"]:
            continue
        if "rmin" in w and r < w["rmin"] or "rmax" in w and r > w["rmax"]:
            continue
        out.append((x, y))
    return out


def _bounds(spec: PlotSpec, pts):
    w = spec.window
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    if spec.unit_circle:
        xs += [-1.0, 1.0]
        ys += [-1.0, 1.0]
    x0, x1 = w.get("xmin", min(xs)), w.get("xmax", max(xs))
    y0, y1 = w.get("ymin", min(ys)), w.get("ymax", max(ys))
    # equal aspect: grow the shorter side around its centre
    span = max(x1 - x0, y1 - y0) or 2.0
    span *= 1.05
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return cx - span / 2, cy - span / 2, span


def render_svg(spec: PlotSpec) -> tuple[str, bool]:
    """SVG text and whether it is empty (every point filtered out)."""
    pts = visible_points(spec)
    x0, y0, span = _bounds(spec, pts)
    scale = (SIZE - 2 * PAD) / span

    def X(x):
        return PAD + (x - x0) * scale

    def Y(y):
        return SIZE - PAD - (y - y0) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (SIZE, SIZE, SIZE, SIZE),
        '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (SIZE, SIZE),
    ]
    if spec.title:
        t = spec.title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append('<text x="%d" y="%d" font-family="sans-serif" font-size="14" text-anchor="middle">%s</text>'
                     % (SIZE // 2, PAD // 2 + 5, t))
    lo, hi = PAD, SIZE - PAD
    lines.append('<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="black" stroke-width="1"/>'
                 % (lo, lo, hi - lo, hi - lo))
    # axes through the origin when it is in view
    if x0 <= 0 <= x0 + span:
        lines.append('<line x1="%s" y1="%d" x2="%s" y2="%d" stroke="#999" stroke-width="0.5"/>'
                     % (_fmt(X(0)), lo, _fmt(X(0)), hi))
    if y0 <= 0 <= y0 + span:
        lines.append('<line x1="%d" y1="%s" x2="%d" y2="%s" stroke="#999" stroke-width="0.5"/>'
                     % (lo, _fmt(Y(0)), hi, _fmt(Y(0))))
    for v, anchor in ((x0, "start"), (x0 + span, "end")):
        lines.append('<text x="%s" y="%d" font-family="sans-serif" font-size="10" text-anchor="%s">%s</text>'
                     % (_fmt(X(v)), hi + 14, anchor, "%.4g" % v))
    for v in (y0, y0 + span):
        lines.append('<text x="%d" y="%s" font-family="sans-serif" font-size="10" text-anchor="end">%s</text>'
                     % (lo - 4, _fmt(Y(v) + 3), "%.4g" % v))
    if spec.unit_circle:
        lines.append('<circle cx="%s" cy="%s" r="%s" fill="none" stroke="#8ab" stroke-width="0.8"/>'
                     % (_fmt(X(0)), _fmt(Y(0)), _fmt(scale)))
    for x, y in pts:
        lines.append('<circle cx="%s" cy="%s" r="%s" fill="black"/>' % (_fmt(X(x)), _fmt(Y(y)), _fmt(spec.marker_radius)))
    lines.append("</svg>")
    return "\n".join(lines) + "\n", not pts
