"""Exceptions shared across the package."""

from __future__ import annotations


class CapExceeded(RuntimeError):
    """An enumeration was refused because it would produce more than `cap` items.

    `count` carries the exact number of items the enumeration would have produced,
    when that number is cheap to compute up front (None otherwise).
    """

    def __init__(self, message: str, count: int | None = None):
        super().__init__(message)
        self.count = count


class NodeBudgetExceeded(RuntimeError):
    """A backtracking search crossed its node budget before finishing.

    `nodes` is the number of row assignments attempted before giving up.
    """

    def __init__(self, message: str, nodes: int | None = None):
        super().__init__(message)
        self.nodes = nodes


class InvalidTableAlgebra(ValueError):
    """A sum table failed effect-algebra validation; `report` says which law broke."""

    def __init__(self, report):
        super().__init__("table is not an effect algebra: " + report.first_failure())
        self.report = report
