"""Exception types raised across the package."""


class DomainError(ValueError):
    """A point, grid or plan leaves the declared domain."""


class MissingOracleError(ValueError):
    """A derivative or high-precision oracle is required but absent."""


class OrderExceededError(ValueError):
    """A difference of order larger than the sample grid supports was requested."""


class InfeasibleStepError(ValueError):
    """No step size satisfies both the accuracy ceiling and the cancellation floor."""

    def __init__(self, message, floor=None, ceiling=None):
        super().__init__(message)
        self.floor = floor
        self.ceiling = ceiling


class ResourceLimitError(RuntimeError):
    """Refused construction because the requested object is too large."""


class CertificateError(ValueError):
    """A function class certificate is missing, invalid or incompatible."""


class UnknownFunctionError(KeyError):
    """Unknown registry identifier."""
