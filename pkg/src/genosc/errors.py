"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(RuntimeError):
    """An iterative numerical procedure failed to converge or lost accuracy."""


class AccuracyError(NumericError):
    """A requested accuracy cannot be guaranteed (e.g. quadrature too small)."""
