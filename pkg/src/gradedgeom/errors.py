"""Exception types shared across the library.

Every constructor validates its degree bookkeeping eagerly; a wrong degree
anywhere would silently corrupt Koszul signs everywhere else, so these are
raised early and loudly instead.
"""


class GradedGeomError(Exception):
    """Base class for all library errors."""


class ChartMismatch(GradedGeomError):
    """Two objects living over different charts were combined."""


class UnknownCoordinate(GradedGeomError):
    """A coordinate name is not part of the chart."""


class DegreeMismatch(GradedGeomError):
    """Degrees of operands violate the homogeneity rules of an operation."""


class ArityMismatch(GradedGeomError):
    """A multilinear map received the wrong number of arguments."""


class ParityMismatch(GradedGeomError):
    """An operation requires the other parity of the algebroid degree."""


class FlavorMismatch(GradedGeomError):
    """Skew and symmetric objects were mixed in one operation."""


class ShiftMismatch(GradedGeomError):
    """Objects built for different degree shifts were combined."""


class FrameMismatch(GradedGeomError):
    """Operands live over different frames."""


class NotASubspace(GradedGeomError):
    """Subspace data does not describe independent homogeneous generators."""


class PreconditionUnmet(GradedGeomError):
    """A check was invoked on data that fails its stated precondition."""


class NotAlmostComplex(GradedGeomError):
    """An endomorphism expected to square to -1 does not."""


class UnsolvableError(GradedGeomError):
    """An exact linear problem (e.g. finding a primitive) has no solution."""


class CocycleFails(GradedGeomError):
    """A dual pair of brackets does not satisfy the cocycle condition."""


class DualityFails(GradedGeomError):
    """A candidate bialgebroid pair fails the duality conditions."""


class ValidationError(GradedGeomError):
    """Scenario input failed validation; message lists every violation."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(GradedGeomError):
    """Scenario input is not syntactically well formed."""
