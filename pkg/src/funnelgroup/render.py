"""SVG rendering of a configuration, its refinement cells, and limit points.

Fixed conventions keep the output byte-stable: the boundary line is
horizontal, one drawing unit is 1/100 of the hull span, semicircles open
upward, and floats are always written with six decimals.
"""

from __future__ import annotations

from .limitset import refine
from .schottky import SchottkyGroup

_BASELINE = 55.0
_SPAN_UNITS = 100.0


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def render_svg(group: SchottkyGroup, depth: int = 6, eps: float = 1e-9) -> str:
    span = group.config.hull_span
    scale = _SPAN_UNITS / span.length

    def sx(x: float) -> float:
        return (x - span.lo) * scale

    layer = refine(group, depth, eps)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-5 0 110 65" width="660" height="390">',
        f'  <desc>rank {group.rank} configuration, refinement depth {depth}</desc>',
        f'  <line x1="-3" y1="{_fmt(_BASELINE)}" x2="103" y2="{_fmt(_BASELINE)}" '
        'stroke="#444444" stroke-width="0.2"/>',
    ]
    parts.append('  <g stroke="#1f4e79" stroke-width="0.4" fill="none">')
    for semi in group.config.semicircles():
        x1 = sx(semi.center - semi.radius)
        x2 = sx(semi.center + semi.radius)
        r = semi.radius * scale
        parts.append(
            f'    <path d="M {_fmt(x1)} {_fmt(_BASELINE)} '
            f'A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(x2)} {_fmt(_BASELINE)}"/>'
        )
    parts.append("  </g>")
    parts.append('  <g stroke="#c05020" stroke-width="1.2">')
    for lo, hi in zip(layer.lo, layer.hi):
        parts.append(
            f'    <line x1="{_fmt(sx(float(lo)))}" y1="{_fmt(_BASELINE + 2.5)}" '
            f'x2="{_fmt(sx(float(hi)))}" y2="{_fmt(_BASELINE + 2.5)}"/>'
        )
    parts.append("  </g>")
    parts.append('  <g fill="#202020">')
    for p in layer.points:
        parts.append(
            f'    <circle cx="{_fmt(sx(float(p)))}" cy="{_fmt(_BASELINE)}" r="0.35"/>'
        )
    parts.append("  </g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
