"""Exception types shared across the package."""


class EpscutError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(EpscutError):
    """Operands live in spaces of different dimension."""


class ZeroNormalError(EpscutError):
    """A halfspace was constructed with a zero normal vector."""


class InfeasiblePolyhedronError(EpscutError):
    """The halfspace intersection is empty (certified by an unbounded dual)."""


class NoFeasibleSampleFoundError(EpscutError):
    """Rejection sampling could not produce the requested feasible points."""


class NotAvailableError(EpscutError):
    """The requested quantity has no analytic formula for this problem."""


class SublevelEmptyError(EpscutError):
    """The shifted sublevel set {f <= -eps} is empty."""


class ZeroSubgradientError(EpscutError):
    """A bundle member has zero norm, so the cut projection is undefined."""

    def __init__(self, point, iteration=None):
        self.point = point
        self.iteration = iteration
        where = f" at iteration {iteration}" if iteration is not None else ""
        super().__init__(f"zero subgradient in bundle{where}")


class InfeasibleCutsError(EpscutError):
    """The cut polyhedron of one step is empty and the fallback is 'fail'."""

    def __init__(self, iteration=None):
        self.iteration = iteration
        where = f" at iteration {iteration}" if iteration is not None else ""
        super().__init__(f"cut polyhedron is empty{where}")


class InsufficientDataError(EpscutError):
    """Too few data points to fit or report anything meaningful."""
