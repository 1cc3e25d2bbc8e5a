"""Tagged return type shared by every asymptotic formula."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .numerics import LogComplex

__all__ = ["ApproxResult", "ErrorOrder", "FormulaTag", "error_scale"]


class FormulaTag(str, enum.Enum):
    OUTER = "outer"
    ORIGIN = "origin"
    INTERIOR = "interior"
    INTERMEDIATE = "intermediate"
    BAND = "band"
    TURN_RIGHT = "turn_right"
    TURN_LEFT = "turn_left"


class ErrorOrder(str, enum.Enum):
    INV_N = "O(1/n)"
    INV_SQRT_N = "O(1/sqrt(n))"
    AIRY = "O(n^-1/2) Airy"
    EXP_SMALL = "exp-small"

    @property
    def power(self):
        """p such that the error behaves like n**-p; None for exponentially small."""
        return {"O(1/n)": 1.0, "O(1/sqrt(n))": 0.5, "O(n^-1/2) Airy": 0.5}.get(self.value)


def error_scale(orders, n) -> float:
    """Sum of n**-p over the tags; exponentially small tags contribute nothing."""
    total = 0.0
    for o in orders:
        p = ErrorOrder(o).power
        if p is not None:
            total += float(n) ** (-p)
    return total


@dataclass(frozen=True)
class ApproxResult:
    value: LogComplex
    formula_tag: FormulaTag
    error_orders: tuple
    details: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def error_order(self) -> ErrorOrder:
        """Dominant (first listed) error tag."""
        return self.error_orders[0]

    def error_scale(self, n) -> float:
        return error_scale(self.error_orders, n)
