"""Shared exception types."""


class CircregError(Exception):
    pass


class DimensionMismatch(CircregError, ValueError):
    """Two monomials or ideals live in different ambient variable counts."""


class CapacityExceeded(CircregError, RuntimeError):
    """A desk-scale guard was hit (lattice size, vertex count, ...)."""


class InternalVerificationError(CircregError, AssertionError):
    """An internal cross-check failed; signals a bug, not bad input."""
