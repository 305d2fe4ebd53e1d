"""Exception types shared across the package.

The CLI maps these onto exit codes, so keep the hierarchy flat and the
distinctions meaningful: a bad input spec is not the same failure as a
divergent integral or an operator queried outside its supported domain class.
"""


class LeraySpecError(Exception):
    """Base class for all package-specific errors."""


class DomainSpecError(LeraySpecError):
    """Invalid domain/measure specification or parameter (CLI exit 2)."""


class DivergentIntegralError(LeraySpecError):
    """An integral that the caller asked for does not converge."""


class NonAdmissibleMeasureError(LeraySpecError):
    """Measure fails admissibility where the operation requires it (CLI exit 3)."""


class UnsupportedClassError(LeraySpecError):
    """Domain class outside the hypotheses of the requested operation (CLI exit 4)."""


class InconclusiveClassificationError(LeraySpecError):
    """Numerical class tests cannot decide and no metadata was declared."""


class QuadratureError(LeraySpecError):
    """A quadrature routine failed to reach its tolerance (CLI exit 5)."""


class NearSingularityError(LeraySpecError):
    """Kernel evaluation requested too close to its singularity."""
