import math

import numpy as np
import pytest

from conftest import disk
from l2plan.core import Query
from l2plan.errors import NoSync
from l2plan.planner import plan
from l2plan.baseline_linf import solve_linf
from l2plan.solver1d import simulate_1d, solve_1d

BOX = 1 / math.sqrt(2)


def check_sync(sp, q, a):
    for i, prof in enumerate(sp.axis_profiles):
        assert prof.total_time == pytest.approx(sp.T_sync, abs=1e-9)
        p, v = simulate_1d(q.start.position[i], q.start.velocity[i], prof, a)
        assert abs(p - q.goal_position[i]) < 1e-8 and abs(v - q.goal_velocity[i]) < 1e-8


def test_one_dimensional_query_matches_solver1d():
    q = Query.make((-1, 0), (0, 0), (1.5, 0), (0, 0), 1, 1)
    sp = solve_linf(q)
    assert sp.T_sync == pytest.approx(solve_1d(-1, 0, 1.5, 0, BOX, BOX).total_time)


def test_diagonal_direction_matches_l2():
    v0 = 0.5 * np.array([-1, -1]) / math.sqrt(2)
    q = Query.make((1, 1), v0, (-1, -1), (0, 0), 1, 1)
    assert solve_linf(q).T_sync == pytest.approx(plan(q).total_time, abs=1e-9)


def test_random_queries_are_slower_and_synchronised():
    rng = np.random.default_rng(0)
    n = 0
    while n < 300:
        v0, vG = disk(rng, BOX), disk(rng, BOX)
        if max(abs(v0).max(), abs(vG).max()) > BOX:
            continue
        q = Query.make(disk(rng, 2), v0, disk(rng, 2), vG, 1, 1)
        n += 1
        sp = solve_linf(q)
        check_sync(sp, q, BOX)
        assert sp.T_sync >= plan(q).total_time - 1e-9


def test_component_above_box_speed_is_rejected():
    with pytest.raises(NoSync):
        solve_linf(Query.make((0, 0), (0.9, 0), (1, 1), (0, 0), 1, 1))


def test_free_goal_velocity_is_rejected():
    with pytest.raises(ValueError):
        solve_linf(Query.make((0, 0), (0, 0), (1, 1), "free", 1, 1))
