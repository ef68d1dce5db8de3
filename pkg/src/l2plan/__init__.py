"""Minimum-time planning for a 2D double integrator with Euclidean bounds on
acceleration and speed."""

from .baseline_linf import SyncedProfile, solve_linf
from .core import (CaseTag, GoalMode, Limits, Phase, PhaseKind, Plan, Query, SolverConfig, State,
                   ValidationReport, simulate, validate)
from .errors import (DegeneratePolynomial, NegativeCruise, NoConvergence, NoRoot, NoSolution, NoSync,
                     NoValidRoot, PlanningError)
from .planner import plan
from .reach import CoastCandidate, reach_position, reach_position_coast
from .rendezvous import (CruisePhiProblem, NoCruiseUnknowns, SeedSet, rendezvous, rendezvous_cruise,
                         rendezvous_no_cruise)
from .roots import Polynomial, quartic_reach_t1, real_roots
from .solver1d import Profile1D, solve_1d
from .stop import StopBangBangSolution, StopCruiseSolution, stop_at_goal, stop_bang_bang, stop_with_cruise

__version__ = "0.1.0"
