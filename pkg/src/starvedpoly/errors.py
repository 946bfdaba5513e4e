"""Error taxonomy shared across the library.

Input and range problems are distinct from numerical failures: callers (and the
CLI exit-code contract) treat them differently.  Anything raised here derives
from StarvedPolyError so library users can catch one base class.
"""


class StarvedPolyError(Exception):
    """Base class for all library errors."""


class UsageError(StarvedPolyError):
    """Invalid input or parameters (CLI exit code 1)."""


class MismatchedDegree(UsageError):
    pass


class InvalidRange(UsageError):
    pass


class LengthMismatch(UsageError):
    pass


class InvalidS(UsageError):
    pass


class NotHyperbolic(UsageError):
    """The polynomial has a root pair off the real axis beyond tolerance."""


class EmptyGrid(UsageError):
    pass


class SolverError(StarvedPolyError):
    """Numerical failure (CLI exit code 2)."""


class IllConditioned(SolverError):
    """The answer sits inside a tolerance band; refusing to guess."""


class InternalInconsistency(SolverError):
    """Two verified answers where at most one may exist."""


class ContinuationStalled(SolverError):
    """Continuation step size underflowed before reaching the target."""


class CostGuardExceeded(SolverError):
    """A brute-force path was asked to exceed its intended problem size."""


class HypothesisViolation(StarvedPolyError):
    """An algorithm precondition on the input data fails (CLI exit code 3)."""


class InconsistentTable(StarvedPolyError):
    """An occurrence table violates structural laws it promised to satisfy."""
