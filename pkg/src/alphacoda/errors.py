"""Exception hierarchy shared by every module of the package."""


class CodaError(Exception):
    """Base class for all package errors."""


class DomainError(CodaError, ValueError):
    """Input lies outside the domain of the requested operation."""


class DegenerateInput(DomainError):
    """Vector cannot be closed because all of its entries are zero."""


class NegativePart(DomainError):
    """A composition part is negative."""


class ZeroPartNotAllowed(DomainError):
    """A zero part reached a log-based or negative-power operation."""


class DimensionMismatch(DomainError):
    """Two operands do not share the same number of components."""


class DimensionTooSmall(DomainError):
    """Fewer than two components were supplied."""


class SpecError(DomainError):
    """An invalid transformation, distance, criterion or plot specification."""


class NumericalError(CodaError, ArithmeticError):
    """Base class for numerical failures."""


class SingularCovariance(NumericalError):
    """The fitted covariance matrix is singular or too few observations were given."""


class OracleNonConvergence(NumericalError):
    """The numerical Frechet-mean minimizer hit its iteration cap."""
