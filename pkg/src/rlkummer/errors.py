"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class DivergentBoundaryError(DomainError):
    """A boundary value at the base point does not exist (negative exponent).

    Raised when a composition law needs ``(D^s f)(a)`` but the series for
    ``D^s f`` has a nonzero term with a negative exponent, i.e. the law's
    hypotheses do not hold for the given function.
    """

    def __init__(self, message: str, *, order: float, exponent: float) -> None:
        super().__init__(message)
        self.order = order
        self.exponent = exponent
