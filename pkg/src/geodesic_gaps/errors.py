"""Exception types shared by the library and mapped to CLI exit codes."""


class DomainError(ValueError):
    """Input outside the domain of a formula or violating a hypothesis."""

    exit_code = 2


class CapExceeded(RuntimeError):
    """A resource cap stopped a computation; ``partial`` holds what finished."""

    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class VerificationFailure(AssertionError):
    exit_code = 4


class CertificateFailure(VerificationFailure):
    """An inequality of a bound trail did not hold."""

    def __init__(self, inequality, lhs, rhs):
        super().__init__(f"inequality {inequality!r} failed: {lhs!r} vs {rhs!r}")
        self.inequality = inequality
        self.lhs = lhs
        self.rhs = rhs
