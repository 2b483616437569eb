"""Exception types shared across the construction and search layers."""

from __future__ import annotations

__all__ = ["InternalVerificationError", "ConstructionFailure", "BudgetExhausted"]


class InternalVerificationError(RuntimeError):
    """A value that should be correct by construction failed its verifier."""


class ConstructionFailure(RuntimeError):
    """A documented construction produced no verified output; callers may
    fall back to search."""


class BudgetExhausted(RuntimeError):
    """Every available route ran out of search budget."""
