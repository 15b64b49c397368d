"""Error types raised by entcert.

Input validation errors derive from ``ValueError`` so callers can catch them
generically.
"""

from typing import Any


class DimensionTooSmall(ValueError):
    """A local dimension or party count is below the supported minimum."""


class DimensionTooLarge(ValueError):
    """The composite Hilbert space exceeds the dense-matrix cap."""


class DimensionMismatch(ValueError):
    """Operands live on incompatible Hilbert spaces or have unequal lengths."""


class NonHermitianInput(ValueError):
    """A matrix that must be Hermitian is not."""


class NotNormalized(ValueError):
    """A state vector or density matrix violates its normalization."""


class MalformedTerm(ValueError):
    """A Pauli term has unknown letters or the wrong length."""


class OutOfRange(ValueError):
    """A scalar parameter lies outside its admissible interval."""


class UnknownName(ValueError):
    """A named state, preset or measure does not exist."""


class InvalidBipartition(ValueError):
    """A bipartition does not split the parties into two nonempty sides."""


class RecordFormatError(ValueError):
    """A measurement record file is malformed."""


class DualViolation(ArithmeticError):
    """A sampled state exceeds the reported dual value."""

    def __init__(self, message: str, violation: float, state: Any = None):
        """Store the worst violation and the offending state."""
        super().__init__(message)
        self.violation = violation
        self.state = state
