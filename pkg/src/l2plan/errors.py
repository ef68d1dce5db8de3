class PlanningError(RuntimeError):
    """Base class for solver failures."""


class DegeneratePolynomial(PlanningError, ValueError):
    pass


class NoRoot(PlanningError):
    pass


class NoValidRoot(PlanningError):
    pass


class NoSolution(PlanningError):
    pass


class NegativeCruise(PlanningError):
    pass


class NoConvergence(PlanningError):
    pass


class NoSync(PlanningError):
    pass
