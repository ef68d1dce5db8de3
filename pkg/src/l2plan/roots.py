"""Real roots of the low-degree polynomials that show up in the planners.

Coefficient arrays are in ascending degree order throughout this module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePolynomial, NoRoot

TRIM_REL = 1e-14
# Eigenvalues of a multiple root split into a small complex cluster; such a
# value is still accepted as real when the polynomial nearly vanishes there.
CLUSTER_IMAG = 1e-4
CLUSTER_RESID = 1e-10


@dataclass(frozen=True)
class Polynomial:
    coefficients: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(x) for x in self.coefficients)
        if not 1 <= len(c) <= 7:
            raise ValueError("expected between 1 and 7 coefficients")
        object.__setattr__(self, "coefficients", c)

    def trimmed(self) -> np.ndarray:
        return trim(self.coefficients)

    def __call__(self, x: float) -> float:
        return polyval(self.coefficients, x)


def trim(coeffs) -> np.ndarray:
    """Drop trailing (highest-degree) coefficients that are negligibly small."""
    c = np.asarray(coeffs, dtype=float)
    big = np.max(np.abs(c)) if c.size else 0.0
    if not big > 0 or not np.isfinite(big):
        raise DegeneratePolynomial("all coefficients are zero (or not finite)")
    n = c.size
    while n > 1 and abs(c[n - 1]) < TRIM_REL * big:
        n -= 1
    return c[:n]


def polyval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _polyval_d(coeffs, x: float) -> tuple[float, float]:
    p, dp = 0.0, 0.0
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def term_scale(coeffs, x: float) -> float:
    ax = abs(x)
    return sum(abs(c) * ax**i for i, c in enumerate(coeffs))


def polish(coeffs, x: float, iters: int = 4) -> float:
    """A few guarded Newton steps; never returns a worse point."""
    best, fbest = x, abs(polyval(coeffs, x))
    for _ in range(iters):
        p, dp = _polyval_d(coeffs, best)
        if dp == 0.0 or p == 0.0:
            break
        cand = best - p / dp
        fc = abs(polyval(coeffs, cand))
        if not fc < fbest:
            break
        best, fbest = cand, fc
    return best


def real_roots(coeffs, tol: float = 1e-9) -> list[float]:
    """All real roots, ascending, with repeated roots collapsed.

    Uses the eigenvalues of the companion matrix (``numpy.roots``) followed
    by Newton polishing.
    """
    c = trim(coeffs)
    deg = c.size - 1
    if deg == 0:
        return []
    if deg == 1:
        return [float(-c[0] / c[1])]
    z = sorted(np.roots(c[::-1]), key=lambda w: (w.real, w.imag))
    # A root of multiplicity m comes back as m eigenvalues spread around it;
    # their mean is far better conditioned than any single member.
    clusters: list[list[complex]] = []
    for zi in z:
        for cl in clusters:
            m = sum(cl) / len(cl)
            if abs(zi - m) <= CLUSTER_IMAG * max(1.0, abs(m)):
                cl.append(zi)
                break
        else:
            clusters.append([zi])
    found = []
    for cl in clusters:
        if len(cl) > 1:
            m = sum(cl) / len(cl)
            re = float(m.real)
            if abs(m.imag) <= tol * max(1.0, abs(re)) and \
                    abs(polyval(c, re)) <= CLUSTER_RESID * term_scale(c, re):
                found.append(re)
                continue
        for zi in cl:
            re, im = float(zi.real), abs(float(zi.imag))
            if im <= tol * max(1.0, abs(re)):
                found.append(polish(c, re))
    found.sort()
    out: list[float] = []
    for x in found:
        if out and x - out[-1] <= tol * max(1.0, abs(x)):
            continue
        out.append(float(x))
    return out


@dataclass(frozen=True)
class QuarticReachCoefficients:
    c1: complex
    c2: complex
    c3: complex
    c4: complex
    c5: complex


def _cbrt(z: complex) -> complex:
    if abs(z.imag) <= 1e-15 * abs(z.real) and z.real < 0:
        return complex(-((-z.real) ** (1.0 / 3.0)), 0.0)
    return z ** (1.0 / 3.0)


def quartic_reach_coefficients(px: float, py: float, vx: float) -> QuarticReachCoefficients | None:
    """c1..c5 for t^4/4 = (px + vx t)^2 + py^2 (scaled, goal at the origin).

    Returns None when c1 or c4 vanishes and the closed form cannot be used.
    """
    # The closed form is written for the mirrored drift term (px - v t), so
    # the velocity enters with its sign flipped.
    v = -vx
    p2, q2, v2 = px * px, py * py, v * v
    v4 = v2 * v2
    inner = 12.0 * (p2 + q2) ** 3 - 3.0 * (p2 * p2 + 20.0 * p2 * q2 - 8.0 * q2 * q2) * v4 \
        + 12.0 * q2 * v4 * v4
    c1 = _cbrt(9.0 * (p2 - 2.0 * q2) * v2 - 2.0 * v4 * v2 + 3.0 * cmath.sqrt(inner))
    if abs(c1) < 1e-12:
        return None
    c2 = 2.0 ** (4.0 / 3.0) * (3.0 * (p2 + q2) - v4)
    k = c2 / c1 - 2.0 ** (2.0 / 3.0) * c1
    c4 = cmath.sqrt(4.0 * v2 - k) / math.sqrt(6.0)
    if abs(c4) < 1e-12:
        return None
    base = 8.0 * v2 + k
    c3 = cmath.sqrt(base + 12.0 * px * v / c4) / math.sqrt(6.0)
    c5 = cmath.sqrt(base - 12.0 * px * v / c4) / math.sqrt(6.0)
    return QuarticReachCoefficients(c1, c2, c3, c4, c5)


def reach_quartic(px: float, py: float, vx: float) -> list[float]:
    """Ascending coefficients of t^4/4 - (px + vx t)^2 - py^2, times 4."""
    return [-4.0 * (px * px + py * py), -8.0 * px * vx, -4.0 * vx * vx, 0.0, 1.0]


def quartic_reach_t1(px: float, py: float, vx: float, tol: float = 1e-9) -> float:
    """Smallest non-negative time at which a single constant unit thrust
    reaches the origin from (px, py) drifting with velocity (vx, 0)."""
    quartic = reach_quartic(px, py, vx)
    if px == 0.0 and py == 0.0:
        return 0.0
    scale = max(1.0, abs(px), abs(py), vx * vx)
    co = quartic_reach_coefficients(px, py, vx)
    best = None
    if co is not None:
        for z in (co.c4 - co.c5, co.c4 + co.c5, -co.c4 + co.c3, -co.c4 - co.c3):
            if abs(z.imag) > 1e-2 * max(1.0, abs(z.real)):
                continue
            t = polish(quartic, z.real, iters=6)
            if t < -1e-12:
                continue
            t = max(t, 0.0)
            if abs(polyval(quartic, t)) > 1e-10 * term_scale(quartic, t):
                continue
            if best is None or t < best:
                best = t
    if best is not None:
        return best
    cands = [max(r, 0.0) for r in real_roots(quartic, tol) if r >= -1e-12 * scale]
    if not cands:
        raise NoRoot("no non-negative real root of the reach quartic")
    return min(cands)
