"""Exception types raised across the package."""


class QOPUCError(Exception):
    """Base class for all package errors."""


class InvalidParameters(QOPUCError, ValueError):
    """A parameter record violates one of its invariants."""


class DegenerateLowerParameter(QOPUCError, ArithmeticError):
    """A denominator q-Pochhammer factor of a 2phi1 series vanishes."""


class DegenerateParameters(QOPUCError, ArithmeticError):
    """Quasi-definiteness fails: a recurrence or moment denominator vanishes."""


class NoConvergence(QOPUCError, ArithmeticError):
    """An iterative evaluation hit its cap before meeting its tolerance."""


class DivisionByNearZero(QOPUCError, ArithmeticError):
    pass


class DegreeOverflow(QOPUCError, ValueError):
    pass


class IllConditioned(QOPUCError, ArithmeticError):
    """Root refinement failed to drive the residual below threshold."""


class SizeMismatch(QOPUCError, ValueError):
    pass


class NonExactDivision(QOPUCError, ArithmeticError):
    """Division by (z - 1) left a remainder that should have vanished."""
