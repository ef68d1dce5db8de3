"""Reaching a goal position with a prescribed nonzero velocity.

Without a cruise phase the two thrusts (theta1, t1) and (theta2, t2) solve a
4x4 nonlinear system: the state after the first thrust must equal the goal
state propagated backwards through the second. Newton is started from a
handful of guesses built out of two-thrust stopping solutions.

With a cruise phase the only unknown is the cruise heading phi; everything
else follows from it. phi is found by a scalar root search started from a
Van der Corput sequence over [-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import CaseTag, Frame, Phase, Plan, Query, SolverConfig, angle_of, simulate, wrap_angle
from .errors import NoConvergence
from .stop import stop_no_coast

SPEED_SLACK = 1e-12


@dataclass(frozen=True)
class NoCruiseUnknowns:
    theta1: float
    t1: float
    theta2: float
    t2: float
    residual: float = 0.0

    @property
    def total_time(self) -> float:
        return self.t1 + self.t2

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.t1, self.theta2, self.t2])


@dataclass
class SeedSet:
    pts: list
    guesses: list = field(default_factory=list)


@dataclass(frozen=True)
class CruisePhiProblem:
    """Cruise heading and the two speed changes it implies."""

    phi: float
    v0: tuple
    vG: tuple
    v_m: float
    residual: float = math.nan

    @property
    def r_0(self) -> float:
        return math.hypot(self.v_m * math.cos(self.phi) - self.v0[0], self.v_m * math.sin(self.phi) - self.v0[1])

    @property
    def r_G(self) -> float:
        return math.hypot(self.vG[0] - self.v_m * math.cos(self.phi), self.vG[1] - self.v_m * math.sin(self.phi))

    @property
    def theta1(self) -> float:
        return angle_of(self.v_m * math.cos(self.phi) - self.v0[0], self.v_m * math.sin(self.phi) - self.v0[1])

    @property
    def theta2(self) -> float:
        return angle_of(self.vG[0] - self.v_m * math.cos(self.phi), self.vG[1] - self.v_m * math.sin(self.phi))


def van_der_corput(k: int, base: int = 2) -> float:
    """k-th element (k >= 1) of the Van der Corput sequence in [0, 1)."""
    x, denom = 0.0, 1.0
    while k:
        k, digit = divmod(k, base)
        denom *= base
        x += digit / denom
    return x


def vdc_angle(k: int) -> float:
    return -math.pi + 2.0 * math.pi * van_der_corput(k)


# -- no cruise -----------------------------------------------------------------

def seed_set(query: Query, cfg: SolverConfig = SolverConfig()) -> SeedSet:
    a = query.limits.a_m
    p0, v0 = query.start.position, query.start.velocity
    pG, vG = query.goal_position, query.goal_velocity
    p1 = p0 + (math.hypot(*v0) / (2.0 * a)) * v0
    p4 = pG - (math.hypot(*vG) / (2.0 * a)) * vG
    pts = [p0, p1, 0.5 * (p1 + p4), p4, pG]
    seeds = SeedSet(pts)
    fwd = [stop_no_coast(p0, v0, pts[k], a, cfg) for k in (2, 3, 4)]
    bwd = [stop_no_coast(pG, -vG, pts[j], a, cfg) for j in (0, 1, 2)]
    fwd = [f for f in fwd if f is not None]
    bwd = [b for b in bwd if b is not None]
    # Running backwards from the goal with -vG, a thrust direction u traces the
    # same path as thrusting along u in forward time: theta2 maps over as is.
    for f in fwd:
        for b in bwd:
            seeds.guesses.append(NoCruiseUnknowns(f[0], f[1], b[0], b[1]))
    # each half on its own, with the other thrust fixed by velocity matching
    for th1, t1, *_ in fwd:
        v1 = v0 + a * t1 * np.array([math.cos(th1), math.sin(th1)])
        dv = vG - v1
        seeds.guesses.append(NoCruiseUnknowns(th1, t1, angle_of(*dv), math.hypot(*dv) / a))
    for th2, t2, *_ in bwd:
        v3 = vG - a * t2 * np.array([math.cos(th2), math.sin(th2)])
        dv = v3 - v0
        seeds.guesses.append(NoCruiseUnknowns(angle_of(*dv), math.hypot(*dv) / a, th2, t2))
    return seeds


def _residual_tol(query: Query, cfg: SolverConfig, speed: float | None = None) -> float:
    """cfg.e_min, unless the query is so large that rounding alone exceeds it.

    ``speed`` is the largest speed the solution can involve; by default the
    larger of the endpoint speeds (no cruise).
    """
    if speed is None:
        speed = max(query.start.speed, float(np.hypot(*query.goal_velocity)))
    scale = float(np.hypot(*(query.goal_position - query.start.position))) + speed * speed / query.limits.a_m + speed
    return max(cfg.e_min, 64.0 * np.finfo(float).eps * scale)


def no_cruise_candidates(query: Query, cfg: SolverConfig = SolverConfig()) -> list[NoCruiseUnknowns]:
    """Converged two-thrust solutions, fastest first."""
    a = query.limits.a_m
    p0, v0 = query.start.position, query.start.velocity
    pG, vG = query.goal_position, query.goal_velocity
    tol = _residual_tol(query, cfg)
    args = (float(p0[0]), float(p0[1]), float(v0[0]), float(v0[1]),
            float(pG[0]), float(pG[1]), float(vG[0]), float(vG[1]), float(a))
    out = []
    for g in seed_set(query, cfg).guesses:
        x, res, _ = kernels.newton4(g.as_array(), *args, tol, cfg.newton_max_iters)
        if not res < tol or x[1] < 0.0 or x[3] < 0.0:
            continue
        out.append(NoCruiseUnknowns(wrap_angle(x[0]), float(x[1]), wrap_angle(x[2]), float(x[3]), float(res)))
    out.sort(key=lambda s: (s.total_time, s.theta1))
    return out


def rendezvous_no_cruise(query: Query, cfg: SolverConfig = SolverConfig()) -> NoCruiseUnknowns:
    sols = no_cruise_candidates(query, cfg)
    if not sols:
        raise NoConvergence("no two-thrust seed converged")
    return sols[0]


def switch_speed(query: Query, sol: NoCruiseUnknowns) -> float:
    v0 = query.start.velocity
    a = query.limits.a_m
    return math.hypot(v0[0] + a * sol.t1 * math.cos(sol.theta1), v0[1] + a * sol.t1 * math.sin(sol.theta1))


# -- cruise ----------------------------------------------------------------------

def _canonical_frame(query: Query) -> Frame:
    """Start at the origin with the goal on +x (unscaled)."""
    d = query.goal_position - query.start.position
    psi = angle_of(d[0], d[1]) if (d[0] != 0.0 or d[1] != 0.0) else 0.0
    return Frame(query.start.position, psi, 1.0)


def _cruise_plan_local(phi, dx, dy, v0, vG, vm, a):
    """(theta1, t1, t_c, theta2, t2) for heading phi, or None if phi is not a fixed point."""
    gx, gy = kernels.cruise_gap(phi, dx, dy, v0[0], v0[1], vG[0], vG[1], vm, a)
    prob = CruisePhiProblem(phi, v0, vG, vm)
    if gx * math.cos(phi) + gy * math.sin(phi) < 0.0:
        return None
    return prob.theta1, prob.r_0 / a, math.hypot(gx, gy) / vm, prob.theta2, prob.r_G / a


def _phases(th1, t1, tc, th2, t2) -> tuple:
    phases = []
    if t1 > 0.0:
        phases.append(Phase.thrust(th1, t1))
    phases.append(Phase.cruise(tc))
    if t2 > 0.0:
        phases.append(Phase.thrust(th2, t2))
    return tuple(phases)


def rendezvous_cruise(query: Query, cfg: SolverConfig = SolverConfig()) -> Plan:
    a, vm = query.limits.a_m, query.limits.v_m
    frame = _canonical_frame(query)
    dx, dy = frame.pos_in(query.goal_position)
    v0 = frame.vel_in(query.start.velocity)
    vG = frame.vel_in(query.goal_velocity)
    tol = _residual_tol(query, cfg, vm)
    for k in range(1, cfg.max_vdc_samples + 1):
        phi0 = vdc_angle(k)
        # the mirrored sample keeps the search symmetric about the start-goal line
        starts = (phi0,) if phi0 == 0.0 or abs(phi0) == math.pi else (phi0, -phi0)
        best = None
        for s in starts:
            phi, res, _ = kernels.phi_newton(s, dx, dy, v0[0], v0[1], vG[0], vG[1], vm, a, cfg.newton_max_iters)
            local = _cruise_plan_local(phi, dx, dy, v0, vG, vm, a)
            if local is None:
                continue
            th1, t1, tc, th2, t2 = local
            phases = _phases(frame.angle_out(th1), t1, tc, frame.angle_out(th2), t2)
            end = simulate(query.start, phases, a)
            err = float(np.hypot(*(end.position - query.goal_position)) + np.hypot(*(end.velocity - query.goal_velocity)))
            if err < tol:
                T = t1 + tc + t2
                if best is None or T < best[0]:
                    best = (T, phases, frame.angle_out(phi), err)
        if best is not None:
            T, phases, phi, err = best
            info = {"phi": phi, "vdc_samples": k, "terminal_error": err}
            return Plan(phases, CaseTag.RendezvousCruise, info)
    raise NoConvergence(f"cruise heading search failed after {cfg.max_vdc_samples} samples")


def rendezvous(query: Query, cfg: SolverConfig = SolverConfig()) -> Plan:
    vm = query.limits.v_m
    p0, v0 = query.start.position, query.start.velocity
    if np.array_equal(p0, query.goal_position) and np.array_equal(v0, query.goal_velocity):
        return Plan((), CaseTag.RendezvousNoCruise)
    sols = no_cruise_candidates(query, cfg)
    if sols and switch_speed(query, sols[0]) <= vm * (1.0 + SPEED_SLACK):
        s = sols[0]
        phases = tuple(Phase.thrust(th, t) for th, t in ((s.theta1, s.t1), (s.theta2, s.t2)) if t > 0.0)
        info = {"switch_speed": switch_speed(query, s), "residual": s.residual}
        return Plan(phases, CaseTag.RendezvousNoCruise, info)
    info = {"no_cruise_switch_speed": switch_speed(query, sols[0]) if sols else None}
    try:
        plan = rendezvous_cruise(query, cfg)
    except NoConvergence:
        slower = [s for s in sols if switch_speed(query, s) <= vm * (1.0 + SPEED_SLACK)]
        if not slower:
            raise
        s = slower[0]
        phases = tuple(Phase.thrust(th, t) for th, t in ((s.theta1, s.t1), (s.theta2, s.t2)) if t > 0.0)
        info.update(switch_speed=switch_speed(query, s), residual=s.residual, fallback="slower no-cruise")
        return Plan(phases, CaseTag.RendezvousNoCruise, info)
    plan.info.update(info)
    return plan
