"""Deterministic SVG rendering of scattering diagrams."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .algebra import EXTENDED, QUANTUM, TROPICAL
from .diagrams import RAY, ScatteringDiagram, singular_set
from .errors import ConfigurationError
from .serialize import wall_label

COLORS = {TROPICAL: "#1f6fb4", QUANTUM: "#b4461f", EXTENDED: "#2f8f3a"}
LABEL_MODES = ("none", "leading", "full")


@dataclass(frozen=True)
class SvgOptions:
    size: int = 480
    labels: str = "leading"

    def __post_init__(self):
        if self.size < 64:
            raise ConfigurationError("canvas size must be at least 64 pixels")
        if self.labels not in LABEL_MODES:
            raise ConfigurationError(f"label mode must be one of {', '.join(LABEL_MODES)}")


def _viewport(d: ScatteringDiagram):
    """Center and half-width (exact) of the square window shown."""
    pts = [(Fraction(0), Fraction(0))] + [w.base for w in d.walls] + singular_set(d)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx = (min(xs) + max(xs)) / 2
    cy = (min(ys) + max(ys)) / 2
    extent = max(max(xs) - min(xs), max(ys) - min(ys))
    return (cx, cy), max(extent / 2 + 1, Fraction(2))


def _clip(base, direction, is_ray: bool, center, half):
    """Liang-Barsky clip of base + s*direction to the window; s >= 0 for rays."""
    lo, hi = (Fraction(0) if is_ray else None), None
    for axis in (0, 1):
        dv = direction[axis]
        a = center[axis] - half - base[axis]
        b = center[axis] + half - base[axis]
        if dv == 0:
            if a > 0 or b < 0:
                return None
            continue
        s1, s2 = sorted((a / dv, b / dv))
        lo = s1 if lo is None else max(lo, s1)
        hi = s2 if hi is None else min(hi, s2)
    if hi is None or lo > hi:
        return None
    return ((base[0] + lo * direction[0], base[1] + lo * direction[1]),
            (base[0] + hi * direction[0], base[1] + hi * direction[1]))


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(d: ScatteringDiagram, options: SvgOptions = SvgOptions()) -> str:
    """SVG text; the same diagram and options always give the same bytes."""
    size = options.size
    center, half = _viewport(d)
    margin = size * 0.05
    scale = (size - 2 * margin) / (2 * float(half))

    def to_px(p):
        x = margin + (float(p[0] - center[0] + half)) * scale
        y = margin + (float(center[1] + half - p[1])) * scale
        return _fmt(x), _fmt(y)

    color = COLORS[d.flavor.tag]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        "<defs>",
        f'<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="8" markerHeight="8" orient="auto">'
        f'<path d="M0,0 L10,5 L0,10 z" fill="{color}"/></marker>',
        "</defs>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g class="axes" stroke="#c8c8c8" stroke-width="1">',
    ]
    for direction in ((1, 0), (0, 1)):
        seg = _clip((Fraction(0), Fraction(0)), direction, False, center, half)
        if seg:
            (x1, y1), (x2, y2) = to_px(seg[0]), to_px(seg[1])
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append(f'<g class="walls" stroke="{color}" stroke-width="2" fill="{color}" font-family="sans-serif" font-size="{max(10, size // 40)}">')
    for i, w in enumerate(d.walls):
        seg = _clip(w.base, w.direction, w.kind == RAY, center, half)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = to_px(seg[0]), to_px(seg[1])
        arrow = ' marker-end="url(#arrow)"' if w.kind == RAY else ""
        out.append(f'<line id="wall-{i}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{arrow}/>')
        text = wall_label(w, options.labels, unicode=True)
        if text:
            # label near the far end, nudged off the line
            lx = seg[0][0] + (seg[1][0] - seg[0][0]) * Fraction(4, 5)
            ly = seg[0][1] + (seg[1][1] - seg[0][1]) * Fraction(4, 5)
            px, py = to_px((lx, ly))
            out.append(f'<text x="{px}" y="{py}" dx="6" dy="-6" stroke="none">{escape(text)}</text>')
    out.append("</g>")
    out.append('<g class="singular" fill="black">')
    for p in singular_set(d):
        if abs(p[0] - center[0]) <= half and abs(p[1] - center[1]) <= half:
            x, y = to_px(p)
            out.append(f'<circle cx="{x}" cy="{y}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
