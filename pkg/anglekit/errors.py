""" The exceptions raised by anglekit.

Every error is a ValueError so that callers which only care about bad input can keep catching that. """

from __future__ import annotations

from typing import Any


class AnglekitError(ValueError):
    """Base class of all anglekit errors."""


class DimensionError(AnglekitError):
    """Raised when objects live in different ambient spaces or a dimension bound is exceeded."""


class DegenerateError(AnglekitError):
    """Raised for duplicate vertices, points not in convex position and rank deficient configurations."""


class NotGradedError(AnglekitError):
    """Raised when a poset is not graded or lacks a unique minimum or maximum."""


class NotUnipotentError(AnglekitError):
    """Raised when an incidence function does not take the value 1 on the diagonal."""


class BudgetError(AnglekitError):
    """Raised when a cone needs sampling but the sample budget is zero."""


class FixtureError(AnglekitError):
    """Raised for unknown fixtures and malformed fixture or angle JSON."""


class ConfigurationError(AnglekitError):
    """Raised for malformed configuration values."""


class FiberConditionError(AnglekitError):
    """Raised when an incidence function cannot be pushed forward along a map.

    The offending witnesses are kept so that they can be reported."""

    def __init__(self, q: Any, q_prime: Any, p_prime_1: Any, p_prime_2: Any) -> None:
        self.q = q
        self.q_prime = q_prime
        self.p_prime_1 = p_prime_1
        self.p_prime_2 = p_prime_2
        super().__init__(f"Fiber condition fails over ({q}, {q_prime}): the fibre sums at {p_prime_1} and {p_prime_2} differ")
