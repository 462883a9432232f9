"""Exception types shared across the package."""


class PartialFTError(Exception):
    """Base class for all partialft errors."""


class InvalidArgumentError(PartialFTError, ValueError):
    """An argument violates a precondition (size mismatch, bad n, ...)."""


class InvalidProfileError(PartialFTError, ValueError):
    """A cutoff profile takes values outside [0, 1]."""


class InvalidDataError(PartialFTError, ValueError):
    """Input data is unusable (nonpositive velocities, malformed file)."""
