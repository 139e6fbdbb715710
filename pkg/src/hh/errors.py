"""Exception types shared across the package."""


class HHError(ValueError):
    """Base class for all domain errors raised by this package."""


class ContextMismatch(HHError):
    """Operands were built under different (n, lambda) contexts."""


class GaussMismatch(HHError):
    """Operands carry different Gaussian decay parameters."""


class DivergenceError(HHError):
    """An integral over C^n was requested for a non-decaying function."""


class DegreeCapError(HHError):
    """A polynomial degree exceeded the configured cap."""


class TruncationError(HHError):
    """A Fock truncation is too small for the requested computation."""


class SupportError(HHError):
    """An operator has support outside the subspace it was declared on."""


class InvarianceError(HHError):
    """A function expected to be K-invariant is not."""


class UnsupportedError(HHError):
    """The requested family, dimension or parameter range is not implemented."""


class VerificationError(HHError):
    """A built-in exact self-check failed."""
