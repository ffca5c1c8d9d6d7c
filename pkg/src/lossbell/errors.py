"""Exception types shared across the package."""

from __future__ import annotations


class DegenerateGraphError(ValueError):
    """The graph has maximum degree 0, so the bound formulas do not apply."""


class NotARootError(ValueError):
    """An operation that must anchor at a maximum-degree vertex got a non-root."""


class GraphFormatError(ValueError):
    """A graph document could not be parsed."""


class DistributionError(ValueError):
    """A loss distribution is malformed or not normalized."""


class SizeCapExceededError(RuntimeError):
    """A dense-simulation request is larger than the configured cap."""


class BudgetExceededError(RuntimeError):
    """A subset sweep would enumerate more sets than the configured budget."""


class VerificationError(RuntimeError):
    """An internal consistency check failed (indicates a bug)."""
