"""Exception types shared across the package."""

from __future__ import annotations


class NumberParseError(ValueError):
    """Malformed decimal numeral; ``position`` is the 0-based offending index."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"bad numeral at position {position}: {message}")
        self.position = position
        self.text = text


class SineDomainError(ValueError):
    """Argument outside the |x| <= 4 domain of the sine kernel."""


class OrderError(ValueError):
    """Convergence-order parameter outside its domain (must be >= 1)."""


class TruncationOrderError(ValueError):
    """Series truncation order too small to hold the requested expansion."""


class ConfigError(ValueError):
    """Run configuration violates an invariant, including a start value
    outside the supported basin."""


class DivergenceError(RuntimeError):
    """Deltas stopped shrinking or the state left the stable range.

    The partial trace (terminated_by = "divergence") rides along so callers
    can inspect what happened.
    """

    def __init__(self, message: str, trace):
        super().__init__(message)
        self.trace = trace


class ResumeError(ValueError):
    """Trace cannot be resumed (wrong termination kind or bad step count)."""


class InsufficientDataError(ValueError):
    """Too few recorded steps to form the requested estimate."""


class InsufficientPrecisionError(ValueError):
    """No step pair resolves above the reference noise floor."""
