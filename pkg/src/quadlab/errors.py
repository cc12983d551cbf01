"""Exception hierarchy."""


class QuadLabError(Exception):
    pass


class ModeMixError(QuadLabError, TypeError):
    """Exact and approximate scalars were combined in one computation."""


class ParallelLines(QuadLabError):
    pass


class NonPythagorean(QuadLabError, ValueError):
    """An exact unit vector was requested for a direction with irrational norm."""


class BadArcs(QuadLabError, ValueError):
    pass


class BadDiameter(QuadLabError, ValueError):
    pass


class InfeasibleMorph(QuadLabError, ValueError):
    pass


class DegenerateDiagonal(QuadLabError, ValueError):
    pass


class NonPythagoreanExact(NonPythagorean):
    pass


class InconsistentFit(QuadLabError):
    """An exact interpolation system had no solution. Always a bug."""


class NotCyclic(QuadLabError, ValueError):
    pass


class NonGeneric(QuadLabError, ValueError):
    pass


class DegenerateSlope(QuadLabError, ValueError):
    pass


class NotPerpendicular(QuadLabError, ValueError):
    pass


class VerificationError(QuadLabError):
    """A cross-check inside a verification routine disagreed."""


class RoundLimitExceeded(QuadLabError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace
