import math

import numpy as np
import pytest

from l2plan.core import (CaseTag, Frame, Limits, Phase, PhaseKind, Plan, Query, State, simulate,
                         thrust_max_speed, validate, wrap_angle)


@pytest.mark.parametrize("theta, expected", [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi),
                                             (3 * math.pi, math.pi), (2 * math.pi + 0.5, 0.5), (-0.5, -0.5)])
def test_wrap_angle(theta, expected):
    assert wrap_angle(theta) == pytest.approx(expected, abs=1e-15)


def test_state_is_read_only_and_finite():
    s = State([1, 2], [3, 4])
    assert s.speed == 5.0
    with pytest.raises(ValueError):
        s.position[0] = 3.0
    with pytest.raises(ValueError):
        State([np.nan, 0], [0, 0])


@pytest.mark.parametrize("a, v", [(0, 1), (1, 0), (-1, 1), (math.inf, 1)])
def test_limits_reject_bad_bounds(a, v):
    with pytest.raises(ValueError):
        Limits(a, v)


def test_limits_allow_unbounded_speed():
    assert Limits(1.0, math.inf).v_m == math.inf


def test_phase_and_plan_constraints():
    with pytest.raises(ValueError):
        Phase.thrust(0.0, -1.0)
    with pytest.raises(ValueError):
        Phase(PhaseKind.THRUST, 1.0)
    with pytest.raises(ValueError):
        Phase(PhaseKind.CRUISE, 1.0, 0.3)
    assert Phase.thrust(3 * math.pi, 1.0).theta == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        Plan((Phase.cruise(1), Phase.cruise(1)), CaseTag.StopCruise)
    with pytest.raises(ValueError):
        Plan(tuple(Phase.thrust(0, 1) for _ in range(4)), CaseTag.StopBangBang)
    p = Plan((Phase.thrust(0, 1), Phase.cruise(2), Phase.thrust(math.pi, 1)), CaseTag.StopCruise)
    assert p.total_time == 4.0
    assert p.durations == [1.0, 2.0, 1.0]
    assert p.thrust_angles == [0.0, math.pi]


def test_query_checks_speeds():
    with pytest.raises(ValueError):
        Query.make((0, 0), (2, 0), (1, 0), "zero", 1, 1)
    with pytest.raises(ValueError):
        Query.make((0, 0), (0, 0), (1, 0), (0, 2), 1, 1)
    q = Query.make((0, 0), (0, 0), (3, 4), "free", 1, 1)
    assert q.goal_velocity is None and q.distance == 5.0


def test_simulate_matches_kinematics():
    start = State((1.0, -1.0), (0.5, 0.25))
    th, t = 0.7, 1.3
    end = simulate(start, [Phase.thrust(th, t), Phase.cruise(2.0)], 2.0)
    v1 = np.array([0.5, 0.25]) + 2.0 * t * np.array([math.cos(th), math.sin(th)])
    p1 = np.array([1.0, -1.0]) + np.array([0.5, 0.25]) * t + t * t * np.array([math.cos(th), math.sin(th)])
    assert np.allclose(end.velocity, v1, atol=1e-15)
    assert np.allclose(end.position, p1 + 2.0 * v1, atol=1e-14)


def test_thrust_max_speed_uses_endpoints():
    # braking through zero: speed 1 -> 0 -> 1
    assert thrust_max_speed((1.0, 0.0), math.pi, 2.0, 1.0) == pytest.approx(1.0)
    assert thrust_max_speed((1.0, 0.0), math.pi, 1.5, 1.0) == pytest.approx(1.0)
    assert thrust_max_speed((1.0, 0.0), math.pi, 3.0, 1.0) == pytest.approx(2.0)


def test_validate_flags():
    q = Query.make((-1, 0), (0, 0), (0, 0), "zero", 1, 10)
    good = Plan((Phase.thrust(0, 1), Phase.thrust(math.pi, 1)), CaseTag.StopBangBang)
    assert validate(good, q).passed
    short = Plan((Phase.thrust(0, 1), Phase.thrust(math.pi, 0.9)), CaseTag.StopBangBang)
    assert set(validate(short, q).flags) == {"position error", "velocity error"}
    q2 = Query.make((-1, 0), (0, 0), (0, 0), "zero", 1, 0.5)
    assert "speed above v_m" in validate(good, q2).flags
    slow_cruise = Plan((Phase.thrust(0, 0.1), Phase.cruise(1)), CaseTag.ReachCoast)
    q3 = Query.make((-1, 0), (0, 0), (0, 0), "free", 1, 1)
    assert "cruise below v_m" in validate(slow_cruise, q3).flags


def test_frame_round_trip():
    f = Frame((1.0, 2.0), 0.4, 2.0)
    x, y = f.pos_in((3.0, 2.0))
    assert math.hypot(x, y) == pytest.approx(1.0)
    assert math.atan2(y, x) == pytest.approx(-0.4)
    assert f.angle_out(0.1) == pytest.approx(0.5)
