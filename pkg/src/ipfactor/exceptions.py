"""Exception hierarchy.

All library errors derive from :class:`IPFactorError` (itself a
``ValueError``) so callers can catch one type.
"""


class IPFactorError(ValueError):
    """Base class for every error raised by ipfactor."""


class DimensionError(IPFactorError):
    """Operands have incompatible shapes."""


class NotHermitianError(IPFactorError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotPositiveError(IPFactorError):
    """A matrix or map expected to be positive definite is not."""


class NotSelfAdjointError(IPFactorError):
    """A map expected to be self-adjoint under the trace pairing is not."""


class BranchCutError(IPFactorError):
    """No admissible logarithm branch was found (or verification failed)."""


class DecompositionError(IPFactorError):
    """A decomposition step failed its post-condition."""


class BackoffExhausted(DecompositionError):
    """The epsilon back-off did not find a strictly positive configuration."""

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin
