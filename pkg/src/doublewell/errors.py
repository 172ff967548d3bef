"""Exception types shared across the package.

The split mirrors how operations fail: bad constructor/argument values
(ValidationError), arguments outside an operation's mathematical domain
(DomainError), inputs that violate a documented precondition of an otherwise
valid call (PreconditionError), and runtime numerical breakdowns
(NumericalError and friends).
"""


class ValidationError(ValueError):
    """Arguments fail structural validation (e.g. barrier width outside (0, 1))."""


class DomainError(ValueError):
    """Argument lies outside the mathematical domain of the operation."""


class PreconditionError(ValueError):
    """Input violates a documented precondition (e.g. energy is not a root)."""


class InconsistentDataError(ValueError):
    """Data cannot be produced by the model being fitted."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to produce a usable result."""


class ConvergenceError(NumericalError):
    """Iteration budget exhausted.

    Attributes:
        iterations: number of iterations performed before giving up.
    """

    def __init__(self, message, iterations):
        super().__init__(message)
        self.iterations = iterations


class PartialRootsError(NumericalError):
    """Fewer roots exist than requested.

    Attributes:
        found: tuple of the roots that were located, ascending.
    """

    def __init__(self, message, found):
        super().__init__(message)
        self.found = tuple(found)
