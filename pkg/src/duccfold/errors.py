"""Exception types raised across the package."""


class DuccError(Exception):
    """Base class for all package errors."""


class FCIDUMPError(DuccError, ValueError):
    pass


class DimensionError(DuccError, ValueError):
    pass


class NonCanonicalReference(DuccError):
    """The Fock matrix of the reference has off-diagonal elements above tolerance."""

    def __init__(self, p, q, value, tol):
        self.p, self.q, self.value, self.tol = p, q, value, tol
        super().__init__(
            f"non-canonical reference: |f[{p},{q}]| = {abs(value):.3e} exceeds {tol:.1e}"
        )


class DegenerateDenominator(DuccError):
    def __init__(self, indices, value):
        self.indices, self.value = indices, value
        super().__init__(f"vanishing denominator {value:.3e} at {indices}")


class ConvergenceError(DuccError):
    def __init__(self, message, residual=None, iterations=None):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class DivergenceError(ConvergenceError):
    pass


class ActiveSpaceError(DuccError, ValueError):
    pass


class SpaceTooLarge(DuccError):
    def __init__(self, dimension, cap):
        self.dimension, self.cap = dimension, cap
        super().__init__(f"determinant space of dimension {dimension} exceeds cap {cap}")


class NonConservingOperator(DuccError, ValueError):
    pass


class HermiticityError(DuccError):
    def __init__(self, what, deviation, tol):
        self.what, self.deviation, self.tol = what, deviation, tol
        super().__init__(f"{what} is not Hermitian: max deviation {deviation:.3e} > {tol:.1e}")


class UnsupportedRank(DuccError, ValueError):
    pass
