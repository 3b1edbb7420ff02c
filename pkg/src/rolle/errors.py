"""Exception types raised across the package."""


class RolleError(Exception):
    """Base class for package errors."""


class InvalidInput(RolleError, ValueError):
    """Input violates a documented precondition."""


class InterlacingViolated(RolleError):
    """No sign change inside a bracketing interval."""

    def __init__(self, message="interlacing violated"):
        super().__init__(message)


class NotStrictlyNice(RolleError):
    """Two zeros of the arrangement collide within the separation tolerance."""

    def __init__(self, message="not strictly nice"):
        super().__init__(message)


class SizeGuardError(RolleError, ValueError):
    """Requested enumeration exceeds the supported size."""


class InadmissibleTuple(RolleError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(v.line for v in self.violations)
        super().__init__(f"inadmissible tuple ({lines} violated)")


class BalancingFailed(RolleError):
    """Area balancing root find could not be bracketed."""

    def __init__(self, message="balancing failed"):
        super().__init__(message)


class ZeroCountMismatch(RolleError):
    def __init__(self, message="zero count mismatch"):
        super().__init__(message)


class InternalConsistencyError(RolleError):
    """A mathematically impossible state was reached; indicates a bug."""


class GridTooCoarseWarning(UserWarning):
    """Detected roots are closer than four grid steps."""
