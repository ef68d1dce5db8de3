import math

import numpy as np
import pytest

from conftest import random_query, rel
from l2plan import kernels
from l2plan.core import CaseTag, Phase, PhaseKind, Query, State, simulate, validate
from l2plan.roots import polyval, term_scale
from l2plan.stop import (bang_bang_candidates, stop_at_goal, stop_bang_bang, stop_no_coast, stop_sextic,
                         stop_with_cruise)
from oracles import stop_oracle, stop_world_oracle


def test_symmetric_rest_to_rest():
    plan = stop_at_goal(Query.make((-1, 0), (0, 0), (0, 0), "zero", 1, 10))
    assert plan.case_tag is CaseTag.StopBangBang
    assert [p.theta for p in plan.phases] == pytest.approx([0.0, math.pi], abs=1e-12)
    assert plan.durations == pytest.approx([1.0, 1.0])
    assert plan.info["peak_speed"] == pytest.approx(1.0)


def test_cruise_stop_on_axis():
    q = Query.make((-10, 0), (0, 0), (0, 0), "zero", 1, 1)
    plan = stop_at_goal(q)
    assert plan.case_tag is CaseTag.StopCruise
    assert [p.kind for p in plan.phases] == [PhaseKind.THRUST, PhaseKind.CRUISE, PhaseKind.THRUST]
    assert plan.durations == pytest.approx([1.0, 9.0, 1.0])
    sc = stop_with_cruise(q)
    assert (sc.t_c, sc.r, sc.d) == pytest.approx((9.0, 0.5, 9.5))


@pytest.mark.parametrize("p, theta1", [((-1.0, 0.0), 0.0), ((0.0, -1.0), math.pi / 2)])
def test_scaled_bang_bang(p, theta1):
    sol = stop_bang_bang(p, 0.0)
    assert sol.theta1 == pytest.approx(theta1, abs=1e-12)
    assert (sol.t1, sol.t2) == pytest.approx((1.0, 1.0))


def test_candidates_satisfy_the_stop_equations():
    rng = np.random.default_rng(0)
    for _ in range(300):
        p, q = rng.uniform(-3, 3, 2)
        v = rng.uniform(0, 2)
        for s in bang_bang_candidates(p, q, v):
            out = np.zeros(2)
            kernels.stop_residual(s.theta1, s.t1, p, q, v, out)
            assert np.abs(out).max() < 1e-8 * max(1.0, math.hypot(p, q), v * v)
            sextic = stop_sextic(p, q, v)
            assert abs(polyval(sextic, s.t1)) < 1e-8 * max(1.0, term_scale(sextic, s.t1))


def test_bang_bang_matches_oracle():
    rng = np.random.default_rng(1)
    for _ in range(60):
        p, q = rng.uniform(-2, 2, 2)
        v = rng.uniform(0, 1)
        assert rel(stop_bang_bang((p, q), v).total_time, stop_oracle(p, q, v)) < 1e-5


def test_stop_matches_world_oracle():
    rng = np.random.default_rng(2)
    for _ in range(40):
        q = random_query(rng, "zero")
        T = stop_at_goal(q).total_time
        assert rel(T, stop_world_oracle(q.start.position, q.start.velocity, q.goal_position, 1, 1)) < 1e-5


def test_random_plans_validate():
    rng = np.random.default_rng(3)
    for _ in range(500):
        q = random_query(rng, "zero", a_m=rng.uniform(0.2, 3), v_m=rng.uniform(0.2, 3))
        assert validate(stop_at_goal(q), q).passed


def test_cruise_plans_end_at_rest():
    rng = np.random.default_rng(4)
    n = 0
    while n < 100:
        q = random_query(rng, "zero", radius_p=4.0)
        plan = stop_at_goal(q)
        if plan.case_tag is not CaseTag.StopCruise:
            continue
        n += 1
        end = simulate(q.start, plan.phases, 1.0)
        assert np.allclose(end.position, q.goal_position, atol=1e-9)
        assert np.allclose(end.velocity, 0.0, atol=1e-9)


STOP_CASES = [((-1.0, 1.0), (-0.5, -0.5)), ((1.0, -1.0), (-0.5, -0.5)), ((1.5, 0.0), (-0.5, -0.5)),
            ((0.0, 1.5), (-0.5, -0.5)), ((1.0, 0.0), (-1.0, 0.0)), ((0.0, -1.5), (-1.0, 0.0)),
            ((1.5, 1.0), (-1.0, 0.0)), ((-0.5, 1.0), (-1.0, 0.0))]


@pytest.mark.parametrize("p0, v0", STOP_CASES)
def test_dispatch_switches_to_cruise_with_higher_acceleration(p0, v0):
    low = stop_at_goal(Query.make(p0, v0, (0, 0), "zero", 0.5, 1))
    assert low.case_tag is CaseTag.StopBangBang and low.info["peak_speed"] <= 1.0
    high = stop_at_goal(Query.make(p0, v0, (0, 0), "zero", 1.0, 1))
    assert high.case_tag is CaseTag.StopCruise


def test_stop_no_coast_reaches_target():
    sol = stop_no_coast(np.array([0.0, 0.0]), np.array([0.5, 0.2]), np.array([1.0, 1.0]), 1.0)
    th1, t1, th2, t2 = sol
    end = simulate(State((0, 0), (0.5, 0.2)), [Phase.thrust(th1, t1), Phase.thrust(th2, t2)], 1.0)
    assert np.allclose(end.position, (1, 1), atol=1e-9) and np.allclose(end.velocity, 0, atol=1e-9)
