"""Static chord diagrams of gaps and partition arcs."""

from __future__ import annotations

import math

from .circle import INF, Arc

SIZE, R, C = 400, 150.0, 200.0
BLUE, RED = "#1f4fbf", "#c8102e"   # gaps of p, gaps of q
U_COLORS = {"U_H": "#2e8b57", "U_K": "#e08a00"}


def _finite(pts) -> list:
    return [float(x) for x in pts if x is not INF]


def angle_map(values):
    """Model-circle values in [0, 1) go round once; anything else goes through arctan."""
    vals = _finite(values)
    if vals and all(0 <= v < 1 for v in vals) and INF not in list(values):
        return lambda x: 2 * math.pi * float(x)
    return lambda x: math.pi if x is INF else 2 * math.atan(float(x))


def _xy(theta: float) -> tuple:
    return C + R * math.cos(theta), C - R * math.sin(theta)


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _arc_path(a: float, b: float, radius: float) -> str:
    span = (b - a) % (2 * math.pi)
    x0, y0 = C + radius * math.cos(a), C - radius * math.sin(a)
    x1, y1 = C + radius * math.cos(b), C - radius * math.sin(b)
    large = 1 if span > math.pi else 0
    return f"M {_f(x0)} {_f(y0)} A {_f(radius)} {_f(radius)} 0 {large} 0 {_f(x1)} {_f(y1)}"


def chord_diagram(data: dict) -> str:
    """SVG text for a diagram section: points, gaps_p, gaps_q, U_H, U_K."""
    data = data or {}
    every = list(data.get("points", {}).values())
    for key in ("gaps_p", "gaps_q", "U_H", "U_K"):
        for a in data.get(key, []):
            every += [a.lo, a.hi]
    theta = angle_map(every)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<circle cx="{_f(C)}" cy="{_f(C)}" r="{_f(R)}" fill="none" stroke="#000000" stroke-width="1"/>']
    for key in ("U_H", "U_K"):
        for a in data.get(key, []):
            out.append(f'<path class="{key}" d="{_arc_path(theta(a.lo), theta(a.hi), R + 6)}" '
                       f'fill="none" stroke="{U_COLORS[key]}" stroke-width="5"/>')
    for key, color in (("gaps_p", BLUE), ("gaps_q", RED)):
        for a in data.get(key, []):
            (x0, y0), (x1, y1) = _xy(theta(a.lo)), _xy(theta(a.hi))
            out.append(f'<line class="chord {key}" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" '
                       f'y2="{_f(y1)}" stroke="{color}" stroke-width="2"/>')
    for name, x in sorted(data.get("points", {}).items()):
        t = theta(x)
        px, py = _xy(t)
        lx, ly = C + (R + 22) * math.cos(t), C - (R + 22) * math.sin(t)
        out.append(f'<circle class="point" cx="{_f(px)}" cy="{_f(py)}" r="3" fill="#000000"/>')
        out.append(f'<text x="{_f(lx)}" y="{_f(ly)}" font-size="12" text-anchor="middle">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
