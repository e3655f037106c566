"""Hyperbolic geometry toolkit for simple closed geodesics on the Bolza
surface and explicit gap bounds for the Birman-Series set."""

from .errors import CapExceeded, CertificateFailure, DomainError, VerificationFailure

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CertificateFailure",
    "DomainError",
    "VerificationFailure",
    "__version__",
]
