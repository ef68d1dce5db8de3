import math

import numpy as np
import pytest

from conftest import disk, random_query, rel, rotate
from l2plan import kernels
from l2plan.core import CaseTag, Limits, PhaseKind, Query, simulate, validate
from l2plan.reach import coast_sextic, reach_frame, reach_position, reach_position_coast
from l2plan.roots import polyval, term_scale
from oracles import reach_oracle


def test_collinear_rest_start_without_coast():
    plan = reach_position(Query.make((-2, 0), (0, 0), (0, 0), "free", 1, 10))
    assert plan.case_tag is CaseTag.Reach1D
    assert len(plan.phases) == 1
    assert plan.phases[0].theta == pytest.approx(0.0, abs=1e-15)
    assert plan.total_time == pytest.approx(2.0)


def test_collinear_rest_start_with_coast():
    plan = reach_position(Query.make((-10, 0), (0, 0), (0, 0), "free", 1, 1))
    assert [p.kind for p in plan.phases] == [PhaseKind.THRUST, PhaseKind.CRUISE]
    assert plan.durations == pytest.approx([1.0, 9.5])
    assert plan.total_time == pytest.approx(10.5)


def test_coast_on_axis_from_rest():
    cand = reach_position_coast((-10.0, 0.0), 0.0, Limits(1, 1))
    assert cand.theta1 == pytest.approx(0.0, abs=1e-15)
    assert cand.t1 == pytest.approx(1.0)


def test_coast_on_axis_moving():
    cand = reach_position_coast((-10.0, 0.0), 0.5, Limits(1, 1))
    assert cand.theta1 == pytest.approx(0.0, abs=1e-12)
    assert cand.t1 == pytest.approx(0.5)
    assert cand.total_time == pytest.approx(0.5 + (10 - 0.375) / 1.0)


def test_already_at_goal():
    plan = reach_position(Query.make((1, 2), (0.3, 0), (1, 2), "free", 1, 1))
    assert plan.total_time == 0.0 and plan.phases == ()


def test_full_speed_toward_goal_is_pure_cruise():
    plan = reach_position(Query.make((-3, 0), (1, 0), (0, 0), "free", 1, 1))
    assert [p.kind for p in plan.phases] == [PhaseKind.CRUISE]
    assert plan.total_time == pytest.approx(3.0)


def test_no_coast_distance_condition():
    rng = np.random.default_rng(3)
    for _ in range(300):
        q = random_query(rng, "free", v_m=50.0)
        plan = reach_position(q)
        assert plan.case_tag in (CaseTag.ReachNoCoast, CaseTag.Reach1D)
        t = plan.total_time
        d = q.start.position + q.start.velocity * t - q.goal_position
        lhs, rhs = (0.5 * t * t) ** 2, d @ d
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)


def test_coast_sextic_residual_and_slope():
    rng = np.random.default_rng(4)
    n = 0
    while n < 300:
        q = random_query(rng, "free")
        plan = reach_position(q)
        if plan.case_tag is not CaseTag.ReachCoast:
            continue
        n += 1
        px, py, w = plan.info["local_start"]
        vms = plan.info["v_m_scaled"]
        sextic = plan.info["sextic"]
        if sextic:
            s = plan.info["root"]
            assert abs(polyval(sextic, s)) < 1e-8 * max(1.0, term_scale(sextic, s))
        th = plan.info["theta1_local"]
        assert abs(kernels.coast_cross(th, px, py, w, vms)) < 1e-8
        end = simulate(q.start, plan.phases[:1], q.limits.a_m)
        assert end.speed == pytest.approx(q.limits.v_m, rel=1e-12)


def test_coast_sextic_vanishes_at_true_alignment():
    # build an instance from a known angle: thrust at 0.4 rad from rest... with drift
    a, vm, w, th = 1.0, 1.0, 0.3, 0.4
    t = kernels.coast_t1(th, w, vm)
    v1 = np.array([w + math.cos(th) * t, math.sin(th) * t])
    p1 = -2.0 * v1  # aligned: the goal lies straight ahead along v1
    p0 = p1 - np.array([w * t + 0.5 * math.cos(th) * t * t, 0.5 * math.sin(th) * t * t])
    c = coast_sextic(p0[0], p0[1], w, a, vm)
    assert abs(polyval(c, math.sin(th))) < 1e-9 * term_scale(c, math.sin(th))


def test_matches_oracle():
    rng = np.random.default_rng(5)
    for _ in range(60):
        q = random_query(rng, "free")
        T = reach_position(q).total_time
        o = reach_oracle(q.start.position, q.start.velocity, q.goal_position, 1.0, 1.0)
        assert rel(T, o) < 1e-5


def test_random_plans_validate():
    rng = np.random.default_rng(6)
    for _ in range(500):
        q = random_query(rng, "free", a_m=rng.uniform(0.2, 3), v_m=rng.uniform(0.2, 3))
        assert validate(reach_position(q), q).passed


def test_rotation_equivariance():
    rng = np.random.default_rng(7)
    for _ in range(50):
        q = random_query(rng, "free")
        ang = rng.uniform(-math.pi, math.pi)
        qr = Query.make(rotate(q.start.position, ang), rotate(q.start.velocity, ang),
                        rotate(q.goal_position, ang), "free", 1, 1)
        assert reach_position(qr).total_time == pytest.approx(reach_position(q).total_time, rel=1e-9)


def test_reach_frame_puts_velocity_on_x():
    q = Query.make(disk(np.random.default_rng(8), 2), (0.3, -0.4), (0.5, 0.5), "free", 1, 1)
    f = reach_frame(q)
    vx, vy = f.vel_in(q.start.velocity)
    assert vy == pytest.approx(0.0, abs=1e-15) and vx == pytest.approx(0.5)
