"""Piecewise-constant-acceleration trajectories: sampling and arc length.

Both planners reduce to the same thing downstream: a start state and a list
of segments with constant 2D acceleration. L2 plans produce at most three
segments; the box baseline merges the two axes' switch times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .baseline_linf import SyncedProfile
from .core import PhaseKind, Plan, State


@dataclass(frozen=True)
class Segment:
    duration: float
    ax: float
    ay: float


@dataclass(frozen=True)
class Trajectory:
    start: State
    segments: tuple[Segment, ...]

    @property
    def total_time(self) -> float:
        return sum(s.duration for s in self.segments)

    def switch_times(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum([s.duration for s in self.segments])])

    def sample(self, times) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Position, velocity and acceleration, each shaped (len(times), 2).

        After the end the trajectory keeps drifting at its final velocity; the
        acceleration at a switch time is that of the segment starting there.
        """
        times = np.asarray(times, dtype=float)
        pos = np.empty((times.size, 2))
        vel = np.empty((times.size, 2))
        acc = np.zeros((times.size, 2))
        p = np.array(self.start.position, dtype=float)
        v = np.array(self.start.velocity, dtype=float)
        t0 = 0.0
        done = np.zeros(times.size, dtype=bool)
        for seg in self.segments:
            a = np.array([seg.ax, seg.ay])
            mask = ~done & (times < t0 + seg.duration)
            s = (times[mask] - t0)[:, None]
            pos[mask] = p + v * s + 0.5 * a * s * s
            vel[mask] = v + a * s
            acc[mask] = a
            done |= mask
            p = p + v * seg.duration + 0.5 * a * seg.duration**2
            v = v + a * seg.duration
            t0 += seg.duration
        rest = ~done
        s = (times[rest] - t0)[:, None]
        pos[rest] = p + v * s
        vel[rest] = v
        return pos, vel, acc

    def end_state(self) -> State:
        pos, vel, _ = self.sample([self.total_time])
        return State(pos[0], vel[0])

    def path_length(self) -> float:
        total = 0.0
        v = np.array(self.start.velocity, dtype=float)
        for seg in self.segments:
            a = np.array([seg.ax, seg.ay])
            total += segment_length(v, a, seg.duration)
            v = v + a * seg.duration
        return total


def segment_length(v, a, T: float) -> float:
    """Arc length of x(t) = v t + a t^2 / 2 over [0, T]."""
    if T <= 0.0:
        return 0.0
    A = float(a[0] * a[0] + a[1] * a[1])
    B = float(2.0 * (v[0] * a[0] + v[1] * a[1]))
    C = float(v[0] * v[0] + v[1] * v[1])
    if A == 0.0:
        return math.sqrt(C) * T
    disc = 4.0 * A * C - B * B
    if disc <= 1e-12 * max(4.0 * A * C, B * B, 1e-300):
        # v parallel to a: speed is |c0 + k t|, piecewise linear
        k = math.sqrt(A)
        c0 = B / (2.0 * k)  # signed speed along a at t = 0
        return _abs_linear_integral(c0, k, T)
    val = _antiderivative(A, B, C, disc, T) - _antiderivative(A, B, C, disc, 0.0)
    if math.isfinite(val) and val >= 0.0:
        return val
    return quad(lambda t: math.sqrt(max(A * t * t + B * t + C, 0.0)), 0.0, T, epsabs=1e-13, epsrel=1e-12)[0]


def _antiderivative(A, B, C, disc, t):
    q = math.sqrt(max(A * t * t + B * t + C, 0.0))
    sa = math.sqrt(A)
    return (2.0 * A * t + B) * q / (4.0 * A) + disc / (8.0 * A * sa) * math.asinh((2.0 * A * t + B) / math.sqrt(disc))


def _abs_linear_integral(c0, k, T):
    """Integral of |c0 + k t| over [0, T] with k > 0."""
    t0 = -c0 / k
    if t0 <= 0.0 or t0 >= T:
        return abs(c0 * T + 0.5 * k * T * T)
    return 0.5 * abs(c0) * t0 + 0.5 * abs(c0 + k * T) * (T - t0)


def from_plan(plan: Plan, start: State, a_m: float) -> Trajectory:
    segs = []
    for ph in plan.phases:
        if ph.kind is PhaseKind.THRUST:
            segs.append(Segment(ph.duration, a_m * math.cos(ph.theta), a_m * math.sin(ph.theta)))
        else:
            segs.append(Segment(ph.duration, 0.0, 0.0))
    return Trajectory(start, tuple(segs))


def from_synced(sp: SyncedProfile, start: State, box_a: float) -> Trajectory:
    """Merge the two axes' switch times into joint 2D segments."""
    bounds, accs = [], []
    for prof in sp.axis_profiles:
        t, b, u = 0.0, [], []
        for sgn, dur in prof.segments():
            t += dur
            b.append(t)
            u.append(sgn * box_a)
        bounds.append(b)
        accs.append(u)
    cuts = sorted({0.0, sp.T_sync, *[x for b in bounds for x in b if x < sp.T_sync]})
    segs = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        a = []
        for b, u in zip(bounds, accs):
            k = next((i for i, x in enumerate(b) if mid < x), None)
            a.append(u[k] if k is not None else 0.0)
        segs.append(Segment(hi - lo, a[0], a[1]))
    return Trajectory(start, tuple(segs))
