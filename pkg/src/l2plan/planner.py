"""Single entry point choosing the solver family from the goal-velocity mode."""

from __future__ import annotations

from .core import GoalMode, Plan, Query, SolverConfig
from .reach import reach_position
from .rendezvous import rendezvous
from .stop import stop_at_goal


def plan(query: Query, cfg: SolverConfig = SolverConfig()) -> Plan:
    if query.goal_mode is GoalMode.FREE:
        return reach_position(query, cfg)
    if query.goal_mode is GoalMode.ZERO:
        return stop_at_goal(query, cfg)
    if not (query.goal_velocity[0] or query.goal_velocity[1]):
        return stop_at_goal(query, cfg)
    return rendezvous(query, cfg)
