"""Exception and warning types shared across the package."""


class KampeError(Exception):
    """Base class for all library errors."""


class PoleError(KampeError):
    """A gamma factor or lower Pochhammer factor is evaluated at a nonpositive integer."""


class ShapeError(KampeError):
    """Parameter set violates a structural invariant of the requested function."""


class DomainError(KampeError):
    """Argument lies outside the domain of the operation."""


class DivergenceError(KampeError):
    """Series evaluation detected sustained term growth outside the convergence region."""


class NegativePowerError(KampeError):
    """Operator action on a monomial produced a power below the representable range."""


class ParameterError(KampeError):
    """Invalid numerical parameter (quadrature exponents, truncation policy, ...)."""


class DegenerateError(KampeError):
    """The second Frobenius solution does not exist for this parameter set.

    The first solution is still available as ``first_solution``.
    """

    def __init__(self, message, first_solution=None):
        super().__init__(message)
        self.first_solution = first_solution


class SchemaError(KampeError):
    """Malformed job document handed to the CLI."""


class ConvergenceWarning(UserWarning):
    """An interior series evaluation stopped without meeting its tolerance."""
