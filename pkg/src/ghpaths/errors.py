"""Exception hierarchy.

The CLI maps the four top-level families onto exit codes, so every error
raised by the library derives from exactly one of them.
"""


class GHError(Exception):
    """Base class for all library errors."""


class MetricError(GHError, ValueError):
    """A distance table violates the metric axioms."""


class EmptySpace(MetricError):
    pass


class ShapeMismatch(MetricError):
    pass


class AsymmetricTable(MetricError):
    def __init__(self, i, j):
        super().__init__(f"AsymmetricTable({i},{j}): d[{i}][{j}] != d[{j}][{i}]")
        self.indices = (i, j)


class NegativeDistance(MetricError):
    def __init__(self, i, j):
        super().__init__(f"NegativeDistance({i},{j})")
        self.indices = (i, j)


class NonZeroDiagonal(MetricError):
    def __init__(self, i):
        super().__init__(f"NonZeroDiagonal({i}): a point is not at distance 0 from itself")
        self.indices = (i,)


class ZeroOffDiagonal(MetricError):
    def __init__(self, i, j):
        super().__init__(f"ZeroOffDiagonal({i},{j}): distinct points at distance 0")
        self.indices = (i, j)


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        super().__init__(f"TriangleViolation({i},{j},{k}): d(i,k) > d(i,j) + d(j,k)")
        self.indices = (i, j, k)


class BudgetExceeded(GHError):
    """The instance is larger than the configured search budget."""


class PreconditionError(GHError, ValueError):
    """An operation was called outside its domain."""


class TooSmall(PreconditionError):
    pass


class EmptySubset(PreconditionError):
    pass


class BothZero(PreconditionError):
    pass


class EmptyRelation(PreconditionError):
    pass


class NotACorrespondence(PreconditionError):
    pass


class NotBlockStructured(PreconditionError):
    pass


class LowDistortionViolated(PreconditionError):
    pass


class PreconditionFailed(PreconditionError):
    pass


class NotOptimal(PreconditionError):
    pass


class MagnitudeTooLarge(PreconditionError):
    pass


class MagnitudeMismatch(PreconditionError):
    pass


class RadiusOutOfRange(PreconditionError):
    pass


class RadiusTooSmall(PreconditionError):
    pass


class NotRhoEndpoint(PreconditionError):
    pass


class NotGeneric(PreconditionError):
    pass


class NotOnSphere(PreconditionError):
    pass


class BracketFailed(PreconditionError):
    def __init__(self, index, f_lo, f_hi, r):
        super().__init__(
            f"BracketFailed(sample {index}): F(1)={f_lo}, F(3)={f_hi}, r={r}")
        self.index = index
        self.values = (f_lo, f_hi)


class QTooSmall(PreconditionError):
    pass


class FTooSmall(PreconditionError):
    pass


class VerificationError(GHError):
    """A certificate or an internal consistency check failed."""


class MetricCheckFailed(VerificationError):
    pass


class NotUnique(VerificationError):
    pass


class MonotonicityWarning(UserWarning):
    """The strict-monotonicity hypothesis of the scale search did not hold."""
