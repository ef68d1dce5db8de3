"""Box-bounded (L-infinity) baseline: each axis planned on its own, then
slowed down so both axes finish together.

Every axis uses an accelerate / cruise / accelerate profile with full
acceleration on the ramps and an adjustable cruise velocity ``vc``. The set
of finishing times such a profile can hit is a union of intervals (cruise
velocities close to zero give arbitrarily long times, and some windows can
be unreachable). The common finishing time is the smallest time at or above
the slowest axis' minimum that lies in every axis' set.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .core import Query
from .errors import NoSync
from .solver1d import Profile1D, Shape, sign, solve_1d

log = logging.getLogger(__name__)

TIME_TOL = 1e-12
GRID = 4001


@dataclass(frozen=True)
class SyncedProfile:
    axis_profiles: tuple[Profile1D, Profile1D]
    T_sync: float
    gaps: tuple = ()

    @property
    def total_time(self) -> float:
        return self.T_sync


class _Axis:
    """Finishing time as a function of the cruise velocity for one axis."""

    def __init__(self, p0, v0, pG, vG, a, v):
        self.p0, self.v0, self.pG, self.vG, self.a, self.v = p0, v0, pG, vG, a, v
        self.dp = pG - p0
        self.fastest = solve_1d(p0, v0, pG, vG, a, v)

    def parts(self, vc: float):
        """(t1, tc, t2) for cruise velocity vc; tc may come out negative."""
        a = self.a
        t1 = abs(vc - self.v0) / a
        t2 = abs(self.vG - vc) / a
        ramps = 0.5 * (self.v0 + vc) * t1 + 0.5 * (vc + self.vG) * t2
        rest = self.dp - ramps
        if vc == 0.0:
            tc = 0.0 if rest == 0.0 else -math.inf
        else:
            tc = rest / vc
        return t1, tc, t2

    def time(self, vc: float) -> float:
        t1, tc, t2 = self.parts(vc)
        return t1 + tc + t2 if tc >= 0.0 else math.nan

    def rest_ok(self) -> bool:
        """A stop-and-wait profile (vc = 0) exists, so every long time is reachable."""
        t1, _, t2 = self.parts(0.0)
        ramps = 0.5 * self.v0 * t1 + 0.5 * self.vG * t2
        return abs(self.dp - ramps) <= 1e-12 * max(1.0, abs(self.dp))

    def profile(self, vc: float) -> Profile1D:
        t1, tc, t2 = self.parts(vc)
        tc = max(tc, 0.0)
        shape = Shape.TRAPEZOIDAL if tc > 0.0 else Shape.TRIANGULAR
        return Profile1D(sign(vc - self.v0) or sign(self.dp), t1, tc, t2, abs(vc), shape,
                         sign(vc - self.v0), sign(self.vG - vc), vc)

    def intervals(self) -> list[tuple[float, float, float, float]]:
        """Reachable time windows as (T_lo, T_hi, vc_lo, vc_hi) runs of the vc grid."""
        vcs = np.concatenate([np.linspace(-self.v, self.v, GRID),
                              np.geomspace(1e-9, 1e-3, 200) * self.v,
                              -np.geomspace(1e-9, 1e-3, 200) * self.v])
        vcs = np.unique(vcs[vcs != 0.0])
        T = np.array([self.time(x) for x in vcs])
        ok = np.isfinite(T)
        runs = []
        i, n = 0, len(vcs)
        while i < n:
            if not ok[i]:
                i += 1
                continue
            j = i
            while j + 1 < n and ok[j + 1] and (vcs[j] < 0) == (vcs[j + 1] < 0):
                j += 1
            lo_vc, hi_vc = self._edge(vcs, ok, i, -1), self._edge(vcs, ok, j, +1)
            ts = [self.time(lo_vc), self.time(hi_vc), *T[i:j + 1]]
            tmin = self._refine_min(vcs, T, i, j, min(ts))
            tmax = max(ts)
            # a run touching vc -> 0 stretches to arbitrarily long times
            near_zero = (vcs[j] < 0 and j + 1 < n and vcs[j + 1] > 0) or (vcs[i] > 0 and i > 0 and vcs[i - 1] < 0)
            if near_zero:
                tmax = math.inf
            runs.append((tmin, tmax, lo_vc, hi_vc))
            i = j + 1
        if self.rest_ok():
            t1, _, t2 = self.parts(0.0)
            runs.append((t1 + t2, math.inf, 0.0, 0.0))
        runs.append((self.fastest.total_time, self.fastest.total_time, math.nan, math.nan))
        return runs

    def _edge(self, vcs, ok, k, direction):
        """Push a run end toward the invalid neighbour by bisection on tc >= 0."""
        nb = k + direction
        if nb < 0 or nb >= len(vcs) or ok[nb] or (vcs[nb] < 0) != (vcs[k] < 0):
            return float(vcs[k])
        good, bad = float(vcs[k]), float(vcs[nb])
        for _ in range(100):
            mid = 0.5 * (good + bad)
            if mid == good or mid == bad:
                break
            if math.isfinite(self.time(mid)):
                good = mid
            else:
                bad = mid
        return good

    def _refine_min(self, vcs, T, i, j, current):
        k = i + int(np.argmin(T[i:j + 1]))
        lo, hi = vcs[max(i, k - 1)], vcs[min(j, k + 1)]
        # golden-section on the bracket around the smallest grid value
        g = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = float(lo), float(hi)
        for _ in range(200):
            if b - a <= 1e-15 * max(1.0, abs(a)):
                break
            c, d = b - g * (b - a), a + g * (b - a)
            fc, fd = self.time(c), self.time(d)
            if not math.isfinite(fc):
                a = c
            elif not math.isfinite(fd) or fc < fd:
                b = d
            else:
                a = c
        best = self.time(0.5 * (a + b))
        return min(current, best) if math.isfinite(best) else current

    def hit(self, T: float) -> Profile1D:
        """A profile of this axis finishing exactly at T."""
        f = self.fastest
        if abs(T - f.total_time) <= TIME_TOL * max(1.0, T):
            return f
        if self.rest_ok():
            t1, _, t2 = self.parts(0.0)
            if T >= t1 + t2:
                return Profile1D(0, t1, T - t1 - t2, t2, 0.0, Shape.TRAPEZOIDAL,
                                 sign(-self.v0), sign(self.vG), 0.0)
        vcs = np.concatenate([np.linspace(-self.v, self.v, GRID), np.geomspace(1e-9, 1e-3, 200) * self.v,
                              -np.geomspace(1e-9, 1e-3, 200) * self.v])
        vcs = np.unique(vcs[vcs != 0.0])
        F = np.array([self.time(x) - T for x in vcs])
        best = None
        for k in range(len(vcs) - 1):
            f0, f1 = F[k], F[k + 1]
            if not (math.isfinite(f0) and math.isfinite(f1)) or (vcs[k] < 0) != (vcs[k + 1] < 0):
                continue
            if f0 == 0.0:
                best = float(vcs[k])
                break
            if f0 * f1 < 0.0:
                a, b = float(vcs[k]), float(vcs[k + 1])
                fa = f0
                for _ in range(200):
                    m = 0.5 * (a + b)
                    if m == a or m == b:
                        break
                    fm = self.time(m) - T
                    if fm == 0.0:
                        a = b = m
                        break
                    if (fm < 0) == (fa < 0):
                        a, fa = m, fm
                    else:
                        b = m
                best = 0.5 * (a + b)
                break
        if best is None:
            # T touches a window edge or a stationary point of time(vc): no sign
            # change to bracket, so minimise the miss around the closest sample
            k = int(np.nanargmin(np.abs(F)))
            lo, hi = float(vcs[max(k - 1, 0)]), float(vcs[min(k + 1, len(vcs) - 1)])
            res = minimize_scalar(lambda x: abs(self.time(x) - T) if math.isfinite(self.time(x)) else math.inf,
                                  bounds=(lo, hi), method="bounded", options={"xatol": 1e-15})
            best = float(res.x) if res.fun <= abs(F[k]) else float(vcs[k])
        return self.profile(best)


def _next_time(runs, T):
    """Smallest reachable time >= T for one axis (inf if none)."""
    best = math.inf
    for lo, hi, *_ in runs:
        if hi < T - TIME_TOL * max(1.0, T):
            continue
        best = min(best, max(lo, T))
    return best


def solve_linf(query: Query, box_a: float | None = None, box_v: float | None = None) -> SyncedProfile:
    a_m, v_m = query.limits.a_m, query.limits.v_m
    box_a = a_m / math.sqrt(2.0) if box_a is None else box_a
    box_v = v_m / math.sqrt(2.0) if box_v is None else box_v
    if query.goal_velocity is None:
        raise ValueError("the box baseline needs a goal velocity")
    p0, v0 = query.start.position, query.start.velocity
    pG, vG = query.goal_position, query.goal_velocity
    slack = 1.0 + 1e-12
    if max(abs(v0).max(), abs(vG).max()) > box_v * slack:
        raise NoSync("start or goal velocity component exceeds the box speed bound")
    axes = [_Axis(float(p0[i]), float(v0[i]), float(pG[i]), float(vG[i]), box_a, box_v) for i in range(2)]
    runs = [ax.intervals() for ax in axes]
    T = max(ax.fastest.total_time for ax in axes)
    gaps = []
    for _ in range(100):
        nxt = [_next_time(r, T) for r in runs]
        Tn = max(nxt)
        if not math.isfinite(Tn):
            raise NoSync("no common finishing time")
        if Tn <= T + TIME_TOL * max(1.0, T):
            break
        gaps.append((T, Tn))
        T = Tn
    else:
        raise NoSync("synchronisation search did not settle")
    if gaps:
        log.debug("skipped unreachable time windows %s", gaps)
    profiles = tuple(ax.hit(T) for ax in axes)
    return SyncedProfile(profiles, T, tuple(gaps))
