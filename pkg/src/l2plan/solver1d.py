"""Time-optimal rest-to-rest style profiles for a single axis.

Triangular / trapezoidal velocity profiles with symmetric acceleration bound
``a_m`` and speed bound ``v_m``. Also used per axis by the box-bounded
baseline and as a collinear-case reference for the 2D planners.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Shape(enum.Enum):
    TRIANGULAR = "triangular"
    TRAPEZOIDAL = "trapezoidal"


def sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


@dataclass(frozen=True)
class Profile1D:
    """Accelerate / cruise / accelerate profile.

    ``u1`` and ``u2`` are the signs of the two acceleration phases; for a
    time-optimal profile ``u1 = s_p`` and ``u2 = -s_p``. ``v_p`` is the
    speed magnitude at the end of the first phase.
    """

    s_p: int
    t1: float
    t_c: float
    t2: float
    v_p: float
    shape: Shape
    u1: int
    u2: int
    cruise_velocity: float = 0.0

    @property
    def total_time(self) -> float:
        return self.t1 + self.t_c + self.t2

    def segments(self):
        """(acceleration sign, duration) triples in order."""
        return ((self.u1, self.t1), (0, self.t_c), (self.u2, self.t2))


def solve_1d(p0: float, v0: float, pG: float, vG: float, a_m: float, v_m: float = math.inf) -> Profile1D:
    dp = pG - p0
    s_v = sign(vG - v0)
    dp_c = s_v * (vG * vG - v0 * v0) / (2.0 * a_m)
    s_p = sign(dp - dp_c)
    if s_p == 0:
        # critical displacement: one linear ramp from v0 to vG
        t1 = abs(vG - v0) / a_m
        return Profile1D(0, t1, 0.0, 0.0, max(abs(v0), abs(vG)), Shape.TRIANGULAR, s_v, 0, vG)
    v_p = math.sqrt(max(0.0, s_p * dp * a_m + 0.5 * (vG * vG + v0 * v0)))
    if v_p <= v_m:
        t1 = max(0.0, (v_p - s_p * v0) / a_m)
        t2 = max(0.0, (v_p - s_p * vG) / a_m)
        return Profile1D(s_p, t1, 0.0, t2, v_p, Shape.TRIANGULAR, s_p, -s_p, s_p * v_p)
    t1 = max(0.0, (v_m - s_p * v0) / a_m)
    t_c = max(0.0, (2.0 * s_p * a_m * dp + v0 * v0 + vG * vG - 2.0 * v_m * v_m) / (2.0 * a_m * v_m))
    t2 = max(0.0, (v_m - s_p * vG) / a_m)
    return Profile1D(s_p, t1, t_c, t2, v_m, Shape.TRAPEZOIDAL, s_p, -s_p, s_p * v_m)


def simulate_1d(p0: float, v0: float, profile: Profile1D, a_m: float) -> tuple[float, float]:
    p, v = p0, v0
    for u, t in profile.segments():
        acc = u * a_m
        p += v * t + 0.5 * acc * t * t
        v += acc * t
    return p, v


def sample_1d(p0: float, v0: float, profile: Profile1D, a_m: float, times) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Position, velocity and acceleration of the profile at ``times``."""
    times = np.asarray(times, dtype=float)
    pos = np.empty_like(times)
    vel = np.empty_like(times)
    acc = np.zeros_like(times)
    p, v, t0 = p0, v0, 0.0
    done = np.zeros(times.shape, dtype=bool)
    for u, dur in profile.segments():
        a = u * a_m
        mask = ~done & (times <= t0 + dur)
        s = times[mask] - t0
        pos[mask] = p + v * s + 0.5 * a * s * s
        vel[mask] = v + a * s
        acc[mask] = a
        done |= mask
        p += v * dur + 0.5 * a * dur * dur
        v += a * dur
        t0 += dur
    rest = ~done
    s = times[rest] - t0
    pos[rest] = p + v * s
    vel[rest] = v
    return pos, vel, acc


def reach_time_1d(p0: float, v0: float, pG: float, a_m: float, v_m: float = math.inf) -> float:
    """Minimum time to pass through pG with free final velocity: full thrust
    toward the goal, then coast once the speed bound is hit."""
    d = pG - p0
    if d == 0.0:
        return 0.0
    u = math.copysign(1.0, d) * v0  # velocity component toward the goal
    dist = abs(d)
    t_v = (v_m - u) / a_m
    x_v = (v_m * v_m - u * u) / (2.0 * a_m)
    if dist <= x_v:
        return (-u + math.sqrt(u * u + 2.0 * a_m * dist)) / a_m
    return t_v + (dist - x_v) / v_m
