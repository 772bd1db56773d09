"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class StratificationError(RuntimeError):
    """Vertical stratification degenerates (denominator below guard)."""
