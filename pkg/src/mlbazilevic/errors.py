"""Exception hierarchy shared by all modules."""


class MLBazError(Exception):
    """Base class for domain errors raised by this package."""


class DomainError(MLBazError, ValueError):
    """Input outside the domain of an operation."""


class PoleError(DomainError):
    """Gamma function evaluated at (or within tolerance of) a pole."""


class ConvergenceError(MLBazError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""


class OrderMismatchError(DomainError):
    """Two truncated series of different order were combined."""


class HypothesisError(DomainError):
    """A theorem's hypothesis does not hold for the given input."""
