"""Exact quantum b-functions for commutative parabolic prehomogeneous spaces."""

from ._qbfunc import (
    BudgetExceeded,
    DerivationError,
    InterpolationMismatch,
    NotProportional,
    Session,
    check_names,
    theorem_product,
)

__all__ = [
    "BudgetExceeded",
    "DerivationError",
    "InterpolationMismatch",
    "NotProportional",
    "Session",
    "check_names",
    "theorem_product",
]
