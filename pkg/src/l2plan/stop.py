"""Fastest way to come to rest at a goal position.

Two full thrusts (the second one braking against the velocity it finds)
suffice unless the switch speed would exceed ``v_m``. In that case the
particle accelerates to ``v_m`` aimed at the goal, cruises, and brakes
over the braking radius ``v_m^2 / (2 a_m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import CaseTag, Frame, Phase, Plan, Query, SolverConfig, angle_of, wrap_angle
from .errors import NegativeCruise, NoSolution, NoValidRoot
from .reach import goal_frame, reach_frame, reach_position_coast
from .roots import real_roots
from .solver1d import solve_1d

RESIDUAL_TOL = 1e-8
CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class StopBangBangSolution:
    """Scaled-frame solution; durations are in seconds either way."""

    theta1: float
    theta2: float
    t1: float
    t2: float
    peak_speed: float
    residual: float = 0.0
    sextic: tuple = ()

    @property
    def total_time(self) -> float:
        return self.t1 + self.t2


@dataclass(frozen=True)
class StopCruiseSolution:
    theta1: float
    theta2: float
    t1: float
    t_c: float
    t2: float
    r: float
    d: float

    @property
    def total_time(self) -> float:
        return self.t1 + self.t_c + self.t2


def stop_sextic(p: float, q: float, v: float) -> np.ndarray:
    """Ascending coefficients in t1 of the bang-bang stopping sextic.

    Scaled frame: goal at the origin, start (p, q), start velocity (v, 0).
    """
    c0 = -4*(16*p**6 + 8*p**4*(6*q**2 - v**4) + (q*v**4 - 4*q**3)**2 + p**2*(48*q**4 + 48*q**2*v**4 + v**8))
    c1 = -4*p*v*(80*p**4 + 80*q**4 + 72*q**2*v**4 + v**8 + 8*p**2*(20*q**2 - 3*v**4))
    c2 = -v**2*(464*p**4 + 208*q**4 + 88*q**2*v**4 + v**8 + 24*p**2*(28*q**2 - 5*v**4))
    c3 = -256*p**3*v**3 - 128*p*q**2*v**3 + 64*p*v**7
    c4 = 64*p**4 + 128*p**2*q**2 + 64*q**4 - 64*p**2*v**4 + 32*q**2*v**4 + 12*v**8
    c5 = 64*p**3*v + 64*p*q**2*v - 16*p*v**5
    c6 = 16*p**2*v**2 - 4*v**6
    return np.array([c0, c1, c2, c3, c4, c5, c6], dtype=float)

def c_of_t(p: float, q: float, v: float, t: float) -> tuple[float, float]:
    """cos(theta1) as a rational function of t1; returns (numerator, denominator)."""
    P2=p*p+q*q
    num = (4*p*v**2*(-4096*P2**5*(15*p**4 - 49*p**2*q**2 + 40*q**4)
        + 2048*P2**2*(49*p**8 - 41*p**6*q**2 - 303*p**4*q**4 + 529*p**2*q**6 - 186*q**8)*v**4
        - 256*(273*p**10 - 28*p**8*q**2 - 1114*p**6*q**4 + 804*p**4*q**6 - 1263*p**2*q**8 + 1216*q**10)*v**8
        + 256*(105*p**8 - 183*p**6*q**2 + 163*p**4*q**4 - 73*p**2*q**6 - 220*q**8)*v**12
        + 16*(-385*p**6 + 1278*p**4*q**2 - 2233*p**2*q**4 + 1192*q**6)*v**16
        + 8*(105*p**4 - 443*p**2*q**2 + 542*q**4)*v**20 + 7*(-9*p**2 + 32*q**2)*v**24 + 2*v**28)
      + t*(-4096*P2**4*(159*p**6 - 344*p**4*q**2 + 51*p**2*q**4 + 74*q**6)*v**3
        + 2048*P2*(497*p**10 - 79*p**8*q**2 - 1890*p**6*q**4 + 1510*p**4*q**6 + 673*p**2*q**8 - 359*q**10)*v**7
        - 256*(2593*p**10 - 360*p**8*q**2 - 7914*p**6*q**4 + 6700*p**4*q**6 - 2223*p**2*q**8 + 1988*q**10)*v**11
        + 256*(905*p**8 - 862*p**6*q**2 - 1020*p**4*q**4 + 1106*p**2*q**6 - 201*q**8)*v**15
        + 16*(-2865*p**6 + 4204*p**4*q**2 - 1685*p**2*q**4 + 1886*q**6)*v**19
        + 8*(617*p**4 - 966*p**2*q**2 + 709*q**4)*v**23 + (-239*p**2 + 272*q**2)*v**27 + 2*v**31
        + t*(8*p*(-4096*(p**2 - 2*q**2)*P2**6
              - 1024*P2**3*(44*p**6 - 81*p**4*q**2 - 10*p**2*q**4 + 19*q**6)*v**4
              + 256*(299*p**10 + 45*p**8*q**2 - 1018*p**6*q**4 + 434*p**4*q**6 + 559*p**2*q**8 - 127*q**10)*v**8
              - 128*(400*p**8 - 317*p**6*q**2 - 715*p**4*q**4 + 753*p**2*q**6 - 17*q**8)*v**12
              + 16*(1125*p**6 - 1602*p**4*q**2 - 275*p**2*q**4 + 852*q**6)*v**16
              - 4*(884*p**4 - 1401*p**2*q**2 + 255*q**4)*v**20 + 9*(41*p**2 - 47*q**2)*v**24 - 16*v**28)
          + 4*t*v*(4096*P2**5*(4*p**4 - 11*p**2*q**2 + 6*q**4)
              - 1024*P2**2*(45*p**8 - 31*p**6*q**2 - 167*p**4*q**4 + 219*p**2*q**6 - 58*q**8)*v**4
              + 256*(189*p**10 + 6*p**8*q**2 - 702*p**6*q**4 + 732*p**4*q**6 - 359*p**2*q**8 + 182*q**10)*v**8
              - 128*(205*p**8 - 217*p**6*q**2 - 290*p**4*q**4 + 447*p**2*q**6 - 109*q**8)*v**12
              + 16*(510*p**6 - 883*p**4*q**2 + 255*p**2*q**4 + 56*q**6)*v**16
              - 4*(369*p**4 - 681*p**2*q**2 + 308*q**4)*v**20 + (145*p**2 - 188*q**2)*v**24 - 6*v**28
              + 4*t*p*v*(4*P2 - v**4)*(512*P2**3*(3*p**4 - 7*p**2*q**2 + 3*q**4)
                  - 64*(32*p**8 - 13*p**6*q**2 - 119*p**4*q**4 + 169*p**2*q**6 - 45*q**8)*v**4
                  + 16*(68*p**6 - 95*p**4*q**2 - 40*p**2*q**4 + 75*q**6)*v**8
                  - 4*(72*p**4 - 135*p**2*q**2 + 61*q**4)*v**12 + 19*(2*p**2 - 3*q**2)*v**16 - 2*v**20)
              + t**2*v**2*(-2*p + v**2)*(2*p + v**2)*(-256*P2**3*(7*p**4 - 15*p**2*q**2 + 6*q**4)
                  + 128*(18*p**8 - 11*p**6*q**2 - 51*p**4*q**4 + 83*p**2*q**6 - 23*q**8)*v**4
                  - 32*(37*p**6 - 59*p**4*q**2 - 11*p**2*q**4 + 37*q**6)*v**8
                  + 8*(38*p**4 - 73*p**2*q**2 + 31*q**4)*v**12 + (-39*p**2 + 56*q**2)*v**16 + 2*v**20)))))
    den = 8*(4*P2 - v**4)*(16*P2**3 - 8*(p**4 - 6*p**2*q**2 + q**4)*v**4 + P2*v**8)*(64*p**8 + 16*p**6*(4*q**2 + 5*v**4)
        - 2*(8*q**4 + 10*q**2*v**4 + v**8)**2 - 12*p**4*(16*q**4 + 56*q**2*v**4 + 7*v**8)
        + p**2*(-320*q**6 + 976*q**4*v**4 + 324*q**2*v**8 + 23*v**12))
    return num, den


def _c_from_cubic(p: float, q: float, v: float, t: float) -> list[float]:
    """Values of cos(theta1) satisfying the squared x-equation at t1 = t."""
    a = 2.0 * p + 2.0 * v * t
    cubic = [v * v * (v * v + t * t) - a * a,
             2.0 * v * t * (2.0 * v * v + t * t) - 2.0 * t * t * a,
             5.0 * v * v * t * t,
             2.0 * v * t**3]
    try:
        return real_roots(cubic, 1e-7)
    except Exception:
        return []


def _scale(p: float, q: float, v: float) -> float:
    return max(1.0, math.hypot(p, q), v * v)


def _finish(theta: float, t: float, v: float) -> StopBangBangSolution:
    vx = v + math.cos(theta) * t
    vy = math.sin(theta) * t
    t2 = math.hypot(vx, vy)
    theta2 = angle_of(-vx, -vy) if t2 > 0.0 else wrap_angle(theta + math.pi)
    return StopBangBangSolution(wrap_angle(theta), theta2, t, t2, t2)


def _bang_bang_1d(p: float, v: float) -> StopBangBangSolution:
    prof = solve_1d(p, v, 0.0, 0.0, 1.0)
    theta1 = 0.0 if prof.u1 > 0 else math.pi
    if prof.s_p == 0:
        # single ramp lands at rest on the goal: the braking phase is empty
        return StopBangBangSolution(theta1, theta1, prof.t1, 0.0, abs(v))
    return _finish(theta1, prof.t1, v)


def bang_bang_candidates(p: float, q: float, v: float, cfg: SolverConfig = SolverConfig()) -> list[StopBangBangSolution]:
    """Every zero-residual two-thrust stop, fastest first (scaled frame)."""
    scale = _scale(p, q, v)
    sextic = stop_sextic(p, q, v)
    try:
        roots = real_roots(sextic, cfg.real_root_tol)
    except Exception:
        roots = []
    seeds = []
    for t in roots:
        if t < -1e-12 * scale:
            continue
        t = max(t, 0.0)
        cs = []
        num, den = c_of_t(p, q, v, t)
        if den != 0.0 and math.isfinite(num / den):
            cs.append(num / den)
        cs.extend(_c_from_cubic(p, q, v, t))
        for c in cs:
            if abs(c) > 1.0 + CLAMP_TOL:
                continue
            c = min(1.0, max(-1.0, c))
            s = math.sqrt(max(0.0, 1.0 - c * c))
            seeds.append((angle_of(c, s), t))
            seeds.append((angle_of(c, -s), t))
    sols = _accept(seeds, p, q, v, scale, tuple(sextic))
    if not sols:
        # polynomial route found nothing usable: multistart on the residual
        grid = [(th, t) for th in np.linspace(-math.pi, math.pi, 72, endpoint=False)
                for t in (0.25 * scale**0.5, scale**0.5, 3.0 * scale**0.5)]
        sols = _accept(grid, p, q, v, scale, tuple(sextic), iters=60)
    # several seeds land on the same root; keep the best-polished copy of each
    sols.sort(key=lambda s: s.residual)
    unique: list[StopBangBangSolution] = []
    for s in sols:
        if not any(abs(wrap_angle(s.theta1 - u.theta1)) < 1e-6 and abs(s.t1 - u.t1) < 1e-6 * scale for u in unique):
            unique.append(s)
    unique.sort(key=lambda s: (round(s.total_time, 12), s.theta1))
    return unique


def _accept(seeds, p, q, v, scale, sextic, iters: int = 40) -> list[StopBangBangSolution]:
    out = []
    for th, t in seeds:
        th, t, res = kernels.stop_polish(th, t, p, q, v, iters)
        if t < 0.0 or res > RESIDUAL_TOL * scale:
            continue
        sol = _finish(th, t, v)
        out.append(StopBangBangSolution(sol.theta1, sol.theta2, sol.t1, sol.t2, sol.peak_speed, res, sextic))
    return out


def stop_bang_bang(p0_tilde, v0x_tilde: float, cfg: SolverConfig = SolverConfig()) -> StopBangBangSolution:
    """Minimum-time two-thrust stop in the scaled, goal-centred frame."""
    p, q = float(p0_tilde[0]), float(p0_tilde[1])
    v = float(v0x_tilde)
    if p == 0.0 and q == 0.0 and v == 0.0:
        return StopBangBangSolution(0.0, math.pi, 0.0, 0.0, 0.0)
    if abs(q) <= 1e-12 * _scale(p, q, v):
        return _bang_bang_1d(p, v)
    sols = bang_bang_candidates(p, q, v, cfg)
    if not sols:
        raise NoValidRoot("no two-thrust stop candidate has zero position residual")
    return sols[0]


def stop_with_cruise(query: Query, cfg: SolverConfig = SolverConfig()) -> StopCruiseSolution:
    """Thrust to v_m aimed at the goal, cruise, brake. Angles in the world frame."""
    a, vm = query.limits.a_m, query.limits.v_m
    frame = reach_frame(query)
    px, py = frame.pos_in(query.start.position)
    w = math.hypot(*query.start.velocity)
    cand = reach_position_coast((px * a, py * a), w, query.limits, cfg)
    r = vm * vm / (2.0 * a)
    d = cand.cruise_time * vm
    t_c = (d - r) / vm
    if t_c < 0.0:
        if t_c < -1e-9 * max(1.0, d / vm):
            raise NegativeCruise(f"cruise distance {d} shorter than braking radius {r}")
        t_c = 0.0
    th1 = frame.angle_out(cand.theta1)
    # cruise heading is the velocity at the end of the thrust
    c, s = math.cos(cand.theta1), math.sin(cand.theta1)
    heading = angle_of(w / a + c * cand.t1, s * cand.t1)
    th2 = frame.angle_out(heading + math.pi)
    return StopCruiseSolution(th1, th2, cand.t1, t_c, vm / a, r, d)


def stop_at_goal(query: Query, cfg: SolverConfig = SolverConfig()) -> Plan:
    a, vm = query.limits.a_m, query.limits.v_m
    frame = reach_frame(query)
    p, q = frame.pos_in(query.start.position)
    v = math.hypot(*query.start.velocity) / a
    try:
        bb = stop_bang_bang((p, q), v, cfg)
    except NoValidRoot as exc:
        raise NoSolution(str(exc)) from exc
    info = {"local_start": (p, q, v), "sextic": bb.sextic, "root": bb.t1}
    if bb.peak_speed * a <= vm * (1.0 + 1e-12):
        return _bang_bang_plan(bb, frame, info)
    try:
        sc = stop_with_cruise(query, cfg)
    except NegativeCruise:
        # the fastest two-thrust stop is too fast but a slower one may fit
        slower = [s for s in bang_bang_candidates(p, q, v, cfg) if s.peak_speed * a <= vm * (1.0 + 1e-12)]
        if not slower:
            raise NoSolution("neither a cruise nor a two-thrust stop is admissible")
        info.update(root=slower[0].t1, fallback="slower bang-bang")
        return _bang_bang_plan(slower[0], frame, info)
    phases = []
    if sc.t1 > 0.0:
        phases.append(Phase.thrust(sc.theta1, sc.t1))
    phases.append(Phase.cruise(sc.t_c))
    phases.append(Phase.thrust(sc.theta2, sc.t2))
    info = {"local_start": (p, q, v), "braking_radius": sc.r, "cruise_distance": sc.d}
    return Plan(tuple(phases), CaseTag.StopCruise, info)


def _bang_bang_plan(bb: StopBangBangSolution, frame: Frame, info: dict) -> Plan:
    phases = [Phase.thrust(frame.angle_out(bb.theta1), bb.t1)]
    if bb.t2 > 0.0:
        phases.append(Phase.thrust(frame.angle_out(bb.theta2), bb.t2))
    info = dict(info, peak_speed=bb.peak_speed * frame.a_m)
    return Plan(tuple(phases), CaseTag.StopBangBang, info)


def stop_no_coast(p0, v0, target, a_m: float, cfg: SolverConfig = SolverConfig()):
    """World-frame (theta1, t1, theta2, t2) of the fastest two-thrust stop at
    ``target``, ignoring the speed bound; None if none is found."""
    frame = goal_frame(p0, v0, target, a_m)
    p, q = frame.pos_in(p0)
    v = math.hypot(v0[0], v0[1]) / a_m
    try:
        bb = stop_bang_bang((p, q), v, cfg)
    except (NoValidRoot, ValueError):
        return None
    return frame.angle_out(bb.theta1), bb.t1, frame.angle_out(bb.theta2), bb.t2
