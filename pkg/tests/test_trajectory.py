import math

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from conftest import random_query
from l2plan.core import Phase, Query, State, simulate
from l2plan.planner import plan
from l2plan.trajectory import Segment, Trajectory, from_plan, segment_length


def test_simulate_examples():
    rest = State((0, 0), (0, 0))
    end = simulate(rest, [Phase.thrust(0.0, 1.0)], 1.0)
    assert np.allclose(end.position, (0.5, 0)) and np.allclose(end.velocity, (1, 0))
    end = simulate(rest, [Phase.thrust(0.0, 1.0), Phase.cruise(2.0)], 1.0)
    assert np.allclose(end.position, (2.5, 0)) and np.allclose(end.velocity, (1, 0))


def test_simulate_against_step_integrator():
    rng = np.random.default_rng(0)
    for _ in range(5):
        q = random_query(rng, "vector")
        p = plan(q)
        x = np.concatenate([q.start.position, q.start.velocity])
        for ph in p.phases:
            a = np.zeros(2) if ph.theta is None else np.array([math.cos(ph.theta), math.sin(ph.theta)])
            sol = solve_ivp(lambda t, y: np.concatenate([y[2:], a]), (0, ph.duration), x,
                            method="DOP853", rtol=1e-13, atol=1e-14)
            x = sol.y[:, -1]
        end = simulate(q.start, p.phases, 1.0)
        assert np.abs(x[:2] - end.position).max() < 1e-8
        assert np.abs(x[2:] - end.velocity).max() < 1e-8


def test_sampling_endpoints_and_switches():
    traj = Trajectory(State((0, 0), (0, 0)), (Segment(1.0, 1.0, 0.0), Segment(1.0, -1.0, 0.0)))
    pos, vel, acc = traj.sample([0.0, 1.0, 2.0, 3.0])
    assert np.allclose(pos[:, 0], [0, 0.5, 1.0, 1.0])
    assert np.allclose(acc[:, 0], [1, -1, 0, 0])
    assert traj.end_state().speed == pytest.approx(0.0, abs=1e-15)


def test_straight_line_length_is_distance():
    p = plan(Query.make((-2, 0), (0, 0), (1, 0), "zero", 1, 1))
    assert from_plan(p, State((-2, 0), (0, 0)), 1.0).path_length() == pytest.approx(3.0)


def test_segment_length_against_quadrature():
    rng = np.random.default_rng(1)
    for _ in range(300):
        v, a = rng.normal(size=2), rng.normal(size=2)
        T = rng.uniform(0, 3)
        ref = quad(lambda t: np.hypot(*(v + a * t)), 0, T, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        assert segment_length(v, a, T) == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_segment_length_reversal():
    # braking through zero along a line: 1 -> 0 -> 1 covers 0.5 + 0.5
    assert segment_length(np.array([1.0, 0.0]), np.array([-1.0, 0.0]), 2.0) == pytest.approx(1.0)
    assert segment_length(np.array([0.0, 0.0]), np.array([0.0, 0.0]), 2.0) == 0.0
