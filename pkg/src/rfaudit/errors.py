class AuditError(Exception):
    """Base class for errors raised by rfaudit."""


class PolynomialError(AuditError, ValueError):
    pass


class DegenerateError(AuditError):
    """A Sylvester-type matrix is rank deficient within tolerance.

    ``sigma_min`` carries the smallest singular value that triggered it.
    """

    def __init__(self, message: str, sigma_min: float = 0.0):
        super().__init__(f"{message} (sigma_min = {sigma_min:.3e})")
        self.sigma_min = sigma_min


class IndeterminateError(AuditError, ValueError):
    """A value is 0/0, e.g. numerator and denominator vanish at the same point."""


class HypothesisError(AuditError, ValueError):
    """A check was requested outside the hypotheses under which it is valid."""


class RegionError(AuditError, ValueError):
    pass
