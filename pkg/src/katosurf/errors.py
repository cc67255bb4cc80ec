"""Exception hierarchy shared by all modules.

Input problems (bad files, malformed coefficients, invalid step lists) derive
from ``InputError``; failures of a well-posed computation derive from
``MathError``.  The CLI maps them to exit codes 2 and 1.
"""


class KatoError(Exception):
    """Base class for every error raised by this package."""


class InputError(KatoError, ValueError):
    """Malformed or inconsistent input data."""


class MathError(KatoError):
    """A computation was well posed but has no (unique) answer."""


class TruncationError(MathError):
    """Composition would need terms beyond the known truncation."""


class SingularError(MathError):
    """A linear part or matrix that must be invertible is singular."""


class KappaError(MathError):
    """No twisted anticanonical section was found, or it is ambiguous."""


class ConjugacyError(MathError):
    """The conjugacy equations are inconsistent at some degree."""

    def __init__(self, message: str, degree: int | None = None, residual=None):
        super().__init__(message)
        self.degree = degree
        self.residual = residual
