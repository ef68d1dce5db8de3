"""Fastest way to pass through a goal position, final velocity left free.

One constant thrust reaches the goal directly (a quartic in the thrust
time), unless the speed bound would be exceeded; then the particle thrusts
until it reaches ``v_m`` with its velocity aimed at the goal and coasts the
rest of the way (a sextic in the sine of the thrust angle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import CaseTag, Frame, Limits, Phase, Plan, Query, SolverConfig, angle_of, wrap_angle
from .errors import NoSolution, NoValidRoot
from .roots import quartic_reach_t1, reach_quartic, real_roots

DIRECTION_TOL = 1e-7


@dataclass(frozen=True)
class CoastCandidate:
    theta1: float
    t1: float
    terminal_velocity_dir_ok: bool
    cruise_time: float = 0.0
    sextic: tuple = ()
    s_root: float = math.nan

    @property
    def total_time(self) -> float:
        return self.t1 + self.cruise_time


def coast_sextic(px: float, py: float, w: float, a: float, vm: float) -> np.ndarray:
    """Ascending coefficients in s = sin(theta1) of the coast alignment sextic.

    Frame: goal at the origin, start at (px, py), start velocity (w, 0).
    """
    A, V = a, vm
    A2, A3, A4 = A * A, A**3, A**4
    V2, V4, V6, V8 = V * V, V**4, V**6, V**8
    x2, x4 = px * px, px**4
    y2, y3, y4 = py * py, py**3, py**4
    w2, w4, w6, w8, w10, w12 = w * w, w**4, w**6, w**8, w**10, w**12
    c0 = 16 * A4 * V4 * y4
    c1 = 64 * A3 * V4 * y3 * w2
    c2 = -8 * A2 * V2 * y2 * (4 * A2 * V2 * x2 + 4 * A2 * V2 * y2 + V4 * w2 + 4 * A2 * x2 * w2
                              + 4 * A2 * y2 * w2 - 10 * V2 * w4 + w6)
    c3 = -16 * A * V2 * py * w2 * (6 * A2 * V2 * y2 + V4 * w2 + 6 * A2 * y2 * w2 - 2 * V2 * w4 + w6)
    c4 = (16 * A4 * V4 * x4 + 32 * A4 * V4 * x2 * y2 + 16 * A4 * V4 * y4 - 8 * A2 * V6 * x2 * w2
          - 32 * A4 * V2 * x4 * w2 + 8 * A2 * V6 * y2 * w2 + 32 * A4 * V2 * y4 * w2 + V8 * w4
          + 8 * A2 * V4 * x2 * w4 + 16 * A4 * x4 * w4 - 72 * A2 * V4 * y2 * w4 + 32 * A4 * x2 * y2 * w4
          + 16 * A4 * y4 * w4 - 4 * V6 * w6 + 8 * A2 * V2 * x2 * w6 - 72 * A2 * V2 * y2 * w6
          + 6 * V4 * w8 - 8 * A2 * x2 * w8 + 8 * A2 * y2 * w8 - 4 * V2 * w10 + w12)
    c5 = 8 * A * py * w2 * (4 * A2 * V4 * x2 + 4 * A2 * V4 * y2 + V6 * w2 - 8 * A2 * V2 * x2 * w2
                            + 8 * A2 * V2 * y2 * w2 - V4 * w4 + 4 * A2 * x2 * w4 + 4 * A2 * y2 * w4
                            - V2 * w6 + w8)
    c6 = 16 * A2 * w4 * (V4 * x2 + V4 * y2 - 2 * V2 * x2 * w2 + 2 * V2 * y2 * w2 + x2 * w4 + y2 * w4)
    return np.array([c0, c1, c2, c3, c4, c5, c6], dtype=float)


def _coast_state(theta: float, px: float, py: float, w: float, vm: float):
    """(t1, p(t1), v(t1)) in scaled units."""
    t = kernels.coast_t1(theta, w, vm)
    c, s = math.cos(theta), math.sin(theta)
    p1 = (px + w * t + 0.5 * c * t * t, py + 0.5 * s * t * t)
    v1 = (w + c * t, s * t)
    return t, p1, v1


def _direction_ok(p1, v1) -> bool:
    dist = math.hypot(*p1)
    if dist < 1e-12:
        return True
    return abs(wrap_angle(angle_of(*v1) - angle_of(-p1[0], -p1[1]))) < DIRECTION_TOL


def _evaluate(theta: float, px: float, py: float, w: float, vm: float) -> CoastCandidate:
    theta = kernels.coast_polish(theta, px, py, w, vm, 12)
    t, p1, v1 = _coast_state(theta, px, py, w, vm)
    ok = _direction_ok(p1, v1) and t >= 0.0
    return CoastCandidate(wrap_angle(theta), t, ok, math.hypot(*p1) / vm)


def reach_position_coast(p0, v0x: float, limits: Limits, cfg: SolverConfig = SolverConfig()) -> CoastCandidate:
    """Thrust-then-cruise solution in the goal-centred frame (v0y = 0).

    Returned angle is in that frame; durations are in seconds.
    """
    a, vm = limits.a_m, limits.v_m
    px, py, w = p0[0] / a, p0[1] / a, v0x / a
    vms = vm / a
    dist = math.hypot(px, py)
    if w == 0.0:
        theta = angle_of(-px, -py)
        t, p1, _ = _coast_state(theta, px, py, 0.0, vms)
        return CoastCandidate(wrap_angle(theta), t, True, math.hypot(*p1) / vms, (), math.sin(theta))
    if w >= vms * (1.0 - 1e-12) and px < 0.0 and abs(py) <= 1e-12 * max(1.0, dist):
        return CoastCandidate(0.0, 0.0, True, dist / vms, (), 0.0)

    sextic = coast_sextic(px, py, w, 1.0, vms)
    thetas = []
    try:
        roots = real_roots(sextic, cfg.real_root_tol)
    except Exception:
        roots = []
    for s in roots:
        if abs(s) > 1.0 + 1e-12:
            continue
        s = min(1.0, max(-1.0, s))
        c = math.sqrt(max(0.0, 1.0 - s * s))
        thetas.append(angle_of(c, s))
        thetas.append(angle_of(-c, s))
    # the sextic degenerates for collinear starts; the axis directions are
    # cheap to include and get filtered like any other candidate
    thetas.extend((0.0, math.pi))

    best = None
    for th in thetas:
        cand = _evaluate(th, px, py, w, vms)
        if not cand.terminal_velocity_dir_ok:
            continue
        if best is None or cand.total_time < best.total_time - 1e-15:
            best = cand
    if best is None:
        best = _scan(px, py, w, vms)
    if best is None:
        raise NoValidRoot("no coast candidate points its velocity at the goal")
    return CoastCandidate(best.theta1, best.t1, True, best.cruise_time, tuple(sextic), math.sin(best.theta1))


def _scan(px, py, w, vms, n: int = 720) -> CoastCandidate | None:
    grid = np.linspace(-math.pi, math.pi, n + 1)
    f = np.array([kernels.coast_cross(th, px, py, w, vms) for th in grid])
    best = None
    for i in np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0]:
        cand = _evaluate(0.5 * (grid[i] + grid[i + 1]), px, py, w, vms)
        if cand.terminal_velocity_dir_ok and (best is None or cand.total_time < best.total_time):
            best = cand
    return best


def goal_frame(p0, v0, goal, a_m: float) -> Frame:
    """Goal at the origin, start velocity along +x (or the goal along +x when
    starting from rest), scaled by 1/a_m."""
    if v0[0] != 0.0 or v0[1] != 0.0:
        psi = angle_of(v0[0], v0[1])
    else:
        psi = angle_of(goal[0] - p0[0], goal[1] - p0[1])
    return Frame(goal, psi, a_m)


def reach_frame(query: Query) -> Frame:
    return goal_frame(query.start.position, query.start.velocity, query.goal_position, query.limits.a_m)


def reach_position(query: Query, cfg: SolverConfig = SolverConfig()) -> Plan:
    a, vm = query.limits.a_m, query.limits.v_m
    frame = reach_frame(query)
    px, py = frame.pos_in(query.start.position)
    w = math.hypot(*query.start.velocity) / a
    vms = vm / a
    scale = max(1.0, math.hypot(px, py))
    collinear = abs(py) <= 1e-12 * scale
    if px == 0.0 and py == 0.0:
        return Plan((), CaseTag.Reach1D, {"t1": 0.0})

    t1 = quartic_reach_t1(px, py, w, cfg.real_root_tol)
    theta = angle_of(-(px + w * t1), -py)
    speed = math.hypot(w + math.cos(theta) * t1, math.sin(theta) * t1)
    if speed <= vms * (1.0 + 1e-12):
        tag = CaseTag.Reach1D if collinear else CaseTag.ReachNoCoast
        info = {"t1": t1, "theta1_local": theta, "quartic": reach_quartic(px, py, w), "root": t1}
        return Plan((Phase.thrust(frame.angle_out(theta), t1),), tag, info)

    try:
        cand = reach_position_coast((px * a, py * a), w * a, query.limits, cfg)
    except NoValidRoot as exc:
        raise NoSolution(str(exc)) from exc
    phases = []
    if cand.t1 > 0.0:
        phases.append(Phase.thrust(frame.angle_out(cand.theta1), cand.t1))
    phases.append(Phase.cruise(cand.cruise_time))
    on_axis = abs(math.sin(cand.theta1)) <= 1e-12
    tag = CaseTag.Reach1D if collinear and on_axis else CaseTag.ReachCoast
    info = {"t1": cand.t1, "theta1_local": cand.theta1, "sextic": cand.sextic, "root": cand.s_root,
            "local_start": (px, py, w), "v_m_scaled": vms}
    return Plan(tuple(phases), tag, info)
