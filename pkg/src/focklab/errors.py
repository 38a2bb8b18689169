"""Exception types shared across the package."""


class NumericalGuardError(ArithmeticError):
    """A quadrature or series was asked to work outside its trusted range."""
