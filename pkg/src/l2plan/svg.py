"""Minimal SVG profile plots: position, velocity and acceleration panels.

Each panel shows the x and y components and the Euclidean norm against
time; the velocity and acceleration panels also shade the band beyond the
bound. Written by hand to avoid a plotting dependency.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 900, 300
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 30, 40
COLORS = {"x": "#1f77b4", "y": "#ff7f0e", "norm": "#7b3294"}
BAND = "#f4c2d7"


def _polyline(t, y, sx, sy, color):
    pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(t, y))
    return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'


def _panel(y0, title, t, comps, bound=None):
    norm = np.hypot(comps[:, 0], comps[:, 1])
    lo = min(float(comps.min()), 0.0)
    hi = max(float(norm.max()), float(comps.max()), 1e-12)
    if bound is not None:
        lo, hi = min(lo, -1.1 * bound), max(hi, 1.1 * bound)
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    t_end = float(t[-1]) if t[-1] > 0 else 1.0
    w = WIDTH - MARGIN_L - MARGIN_R
    h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + w * x / t_end

    def sy(v):
        return y0 + MARGIN_T + h * (hi - v) / (hi - lo)

    out = ['<g class="panel">',
           f'<text x="{MARGIN_L}" y="{y0 + 20}" font-family="sans-serif" font-size="14">{escape(title)}</text>']
    if bound is not None:
        for top, bot in ((hi, bound), (-bound, lo)):
            out.append(f'<rect x="{MARGIN_L}" y="{sy(top):.2f}" width="{w}" height="{sy(bot) - sy(top):.2f}" '
                       f'fill="{BAND}" opacity="0.6"/>')
    out.append(f'<rect x="{MARGIN_L}" y="{y0 + MARGIN_T}" width="{w}" height="{h}" fill="none" stroke="#888"/>')
    out.append(f'<line x1="{MARGIN_L}" x2="{MARGIN_L + w}" y1="{sy(0):.2f}" y2="{sy(0):.2f}" stroke="#ccc"/>')
    for k in range(6):
        tx = t_end * k / 5
        out.append(f'<text x="{sx(tx):.2f}" y="{y0 + HEIGHT - 15}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="middle">{tx:.3g}</text>')
    for v in (lo + pad, 0.5 * (lo + hi), hi - pad):
        out.append(f'<text x="{MARGIN_L - 5}" y="{sy(v):.2f}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="end">{v:.3g}</text>')
    out.append(_polyline(t, comps[:, 0], sx, sy, COLORS["x"]))
    out.append(_polyline(t, comps[:, 1], sx, sy, COLORS["y"]))
    out.append(_polyline(t, norm, sx, sy, COLORS["norm"]))
    for i, (name, color) in enumerate(COLORS.items()):
        lx = MARGIN_L + w - 150 + 50 * i
        out.append(f'<text x="{lx}" y="{y0 + 20}" font-family="sans-serif" font-size="12" fill="{color}">{name}</text>')
    out.append("</g>")
    return out


def profile_svg(t, pos, vel, acc, v_m: float | None = None, a_m: float | None = None) -> str:
    t = np.asarray(t, dtype=float)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{3 * HEIGHT}" '
             f'viewBox="0 0 {WIDTH} {3 * HEIGHT}">',
             f'<rect width="{WIDTH}" height="{3 * HEIGHT}" fill="white"/>']
    parts += _panel(0, "position [m]", t, np.asarray(pos))
    parts += _panel(HEIGHT, "velocity [m/s]", t, np.asarray(vel), v_m)
    parts += _panel(2 * HEIGHT, "acceleration [m/s^2]", t, np.asarray(acc), a_m)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
