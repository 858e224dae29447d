"""Exception types shared across the library."""


class DomainError(ValueError):
    """An input violates a mathematical precondition of the operation."""


class DivergentMassError(DomainError):
    """A candidate weight has infinite total mass on [0, 1)."""


class WellDefinednessError(DomainError):
    """Operator application requested in a setting where the integral
    defining it fails to converge (the target would not be analytic)."""


class QuadratureDivergence(ArithmeticError):
    """Panel contributions of an improper integral refuse to decay.

    Carries the estimated local exponent of the integrand as evidence.
    """

    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent
