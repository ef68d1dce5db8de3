"""Domain types, closed-form forward simulation and plan validation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Map an angle onto (-pi, pi]."""
    w = math.remainder(float(theta), TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    return w


def angle_of(x: float, y: float) -> float:
    """Angle of the vector (x, y)."""
    return math.atan2(y, x)


def _vec(v) -> np.ndarray:
    a = np.array(v, dtype=float).reshape(2)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class State:
    position: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", _vec(self.position))
        object.__setattr__(self, "velocity", _vec(self.velocity))
        if not (np.all(np.isfinite(self.position)) and np.all(np.isfinite(self.velocity))):
            raise ValueError("state components must be finite")

    @property
    def speed(self) -> float:
        return float(np.hypot(*self.velocity))


@dataclass(frozen=True)
class Limits:
    a_m: float
    v_m: float

    def __post_init__(self):
        if not (self.a_m > 0 and self.v_m > 0):
            raise ValueError(f"limits must be positive, got a_m={self.a_m}, v_m={self.v_m}")
        if not (math.isfinite(self.a_m) and (math.isfinite(self.v_m) or self.v_m == math.inf)):
            raise ValueError("limits must be finite (v_m may be inf)")


class PhaseKind(enum.Enum):
    THRUST = "thrust"
    CRUISE = "cruise"


@dataclass(frozen=True)
class Phase:
    kind: PhaseKind
    duration: float
    theta: float | None = None

    def __post_init__(self):
        if self.duration < 0 or not math.isfinite(self.duration):
            raise ValueError(f"phase duration must be finite and >= 0, got {self.duration}")
        if self.kind is PhaseKind.THRUST:
            if self.theta is None:
                raise ValueError("thrust phase needs an angle")
            object.__setattr__(self, "theta", wrap_angle(self.theta))
        elif self.theta is not None:
            raise ValueError("cruise phase has no thrust angle")
        object.__setattr__(self, "duration", float(self.duration))

    @classmethod
    def thrust(cls, theta: float, duration: float) -> "Phase":
        return cls(PhaseKind.THRUST, duration, theta)

    @classmethod
    def cruise(cls, duration: float) -> "Phase":
        return cls(PhaseKind.CRUISE, duration)


class CaseTag(enum.Enum):
    Reach1D = "Reach1D"
    ReachNoCoast = "ReachNoCoast"
    ReachCoast = "ReachCoast"
    StopBangBang = "StopBangBang"
    StopCruise = "StopCruise"
    RendezvousNoCruise = "RendezvousNoCruise"
    RendezvousCruise = "RendezvousCruise"


@dataclass(frozen=True)
class Plan:
    phases: tuple[Phase, ...]
    case_tag: CaseTag
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        phases = tuple(self.phases)
        if len(phases) > 3:
            raise ValueError("a plan has at most three phases")
        if sum(p.kind is PhaseKind.CRUISE for p in phases) > 1:
            raise ValueError("a plan has at most one cruise phase")
        object.__setattr__(self, "phases", phases)

    @property
    def total_time(self) -> float:
        return sum(p.duration for p in self.phases)

    @property
    def thrust_angles(self) -> list[float]:
        return [p.theta for p in self.phases if p.kind is PhaseKind.THRUST]

    @property
    def durations(self) -> list[float]:
        return [p.duration for p in self.phases]


class GoalMode(enum.Enum):
    FREE = "free"
    ZERO = "zero"
    VECTOR = "vector"


@dataclass(frozen=True, eq=False)
class Query:
    start: State
    goal_position: np.ndarray
    limits: Limits
    goal_mode: GoalMode = GoalMode.ZERO
    goal_velocity: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "goal_position", _vec(self.goal_position))
        if self.goal_mode is GoalMode.VECTOR:
            if self.goal_velocity is None:
                raise ValueError("vector goal mode needs a goal velocity")
            gv = _vec(self.goal_velocity)
        else:
            gv = _vec((0.0, 0.0)) if self.goal_mode is GoalMode.ZERO else None
        object.__setattr__(self, "goal_velocity", gv)
        slack = 1.0 + 1e-12
        if self.start.speed > self.limits.v_m * slack:
            raise ValueError("start speed exceeds v_m")
        if gv is not None and float(np.hypot(*gv)) > self.limits.v_m * slack:
            raise ValueError("goal speed exceeds v_m")

    @classmethod
    def make(cls, p0, v0, pG, vG="zero", a_m=1.0, v_m=1.0) -> "Query":
        """Build a query; ``vG`` is ``"free"``, ``"zero"`` or a 2-vector."""
        if isinstance(vG, str):
            mode = GoalMode(vG)
            gv = None
        elif vG is None:
            mode, gv = GoalMode.FREE, None
        else:
            mode, gv = GoalMode.VECTOR, vG
        return cls(State(p0, v0), pG, Limits(float(a_m), float(v_m)), mode, gv)

    @property
    def distance(self) -> float:
        return float(np.hypot(*(self.goal_position - self.start.position)))


@dataclass(frozen=True)
class SolverConfig:
    e_min: float = 1e-12
    real_root_tol: float = 1e-9
    max_vdc_samples: int = 128
    newton_max_iters: int = 100

    def __post_init__(self):
        if not (self.e_min > 0 and self.real_root_tol > 0 and self.max_vdc_samples > 0
                and self.newton_max_iters > 0):
            raise ValueError("solver config values must be positive")


def thrust_step(p, v, theta: float, t: float, a_m: float):
    """Exact state after a constant thrust of magnitude ``a_m`` at ``theta``."""
    ux, uy = math.cos(theta), math.sin(theta)
    half = 0.5 * a_m * t * t
    px = p[0] + v[0] * t + half * ux
    py = p[1] + v[1] * t + half * uy
    return (px, py), (v[0] + a_m * ux * t, v[1] + a_m * uy * t)


def simulate(start: State, phases: Sequence[Phase], a_m: float) -> State:
    p = (float(start.position[0]), float(start.position[1]))
    v = (float(start.velocity[0]), float(start.velocity[1]))
    for ph in phases:
        if ph.kind is PhaseKind.THRUST:
            p, v = thrust_step(p, v, ph.theta, ph.duration, a_m)
        else:
            p = (p[0] + v[0] * ph.duration, p[1] + v[1] * ph.duration)
    return State(p, v)


def phase_states(start: State, phases: Sequence[Phase], a_m: float) -> list[State]:
    """States at every switch time, including the start and the end."""
    out = [start]
    for ph in phases:
        out.append(simulate(out[-1], [ph], a_m))
    return out


def thrust_max_speed(v, theta: float, t: float, a_m: float) -> float:
    # |v + a u s| is convex in s, so the maximum sits at an endpoint; the
    # stationary point is evaluated too since it is cheap and exact.
    ux, uy = math.cos(theta), math.sin(theta)
    cands = [0.0, t]
    s_star = -(v[0] * ux + v[1] * uy) / a_m
    if 0.0 < s_star < t:
        cands.append(s_star)
    return max(math.hypot(v[0] + a_m * ux * s, v[1] + a_m * uy * s) for s in cands)


@dataclass
class ValidationReport:
    position_error: float
    velocity_error: float | None
    max_speed: float
    flags: list[str]
    passed: bool

    def as_dict(self) -> dict:
        return {
            "position_error": self.position_error,
            "velocity_error": self.velocity_error,
            "max_speed": self.max_speed,
            "flags": list(self.flags),
            "passed": self.passed,
        }


def validate(plan: Plan, query: Query, tol: float = 1e-9) -> ValidationReport:
    a_m, v_m = query.limits.a_m, query.limits.v_m
    states = phase_states(query.start, plan.phases, a_m)
    flags = []
    max_speed = query.start.speed
    for ph, s in zip(plan.phases, states[:-1]):
        v = s.velocity
        if ph.kind is PhaseKind.THRUST:
            max_speed = max(max_speed, thrust_max_speed(v, ph.theta, ph.duration, a_m))
        else:
            speed = s.speed
            max_speed = max(max_speed, speed)
            if ph.duration > 0 and speed < v_m * (1.0 - tol):
                flags.append("cruise below v_m")
    end = states[-1]
    pos_err = float(np.hypot(*(end.position - query.goal_position)))
    vel_err = None
    if query.goal_velocity is not None:
        vel_err = float(np.hypot(*(end.velocity - query.goal_velocity)))
    if pos_err > tol * max(1.0, query.distance):
        flags.append("position error")
    if vel_err is not None and vel_err > tol * (v_m if math.isfinite(v_m) else 1.0):
        flags.append("velocity error")
    if max_speed > v_m * (1.0 + tol):
        flags.append("speed above v_m")
    return ValidationReport(pos_err, vel_err, max_speed, flags, not flags)


class Frame:
    """Goal-centred, rotated and acceleration-scaled coordinates.

    ``local = R(-psi) (world - origin) / a_m`` for positions and velocities;
    durations are unchanged and thrust angles shift by ``psi``.
    """

    def __init__(self, origin, psi: float, a_m: float):
        self.origin = np.asarray(origin, dtype=float)
        self.psi = float(psi)
        self.a_m = float(a_m)
        self._c, self._s = math.cos(psi), math.sin(psi)

    def _rot_in(self, x) -> tuple[float, float]:
        c, s = self._c, self._s
        return (c * x[0] + s * x[1]) / self.a_m, (-s * x[0] + c * x[1]) / self.a_m

    def pos_in(self, p) -> tuple[float, float]:
        return self._rot_in(np.asarray(p, dtype=float) - self.origin)

    def vel_in(self, v) -> tuple[float, float]:
        return self._rot_in(np.asarray(v, dtype=float))

    def angle_out(self, theta: float) -> float:
        return wrap_angle(theta + self.psi)
