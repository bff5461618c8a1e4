"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Raised for structurally invalid graph input or violated preconditions."""


class FormatError(GraphError):
    """Parse failure in a text format; carries the line and/or byte offset."""

    def __init__(self, message: str, *, line: int | None = None, offset: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size budget."""


class WitnessError(AssertionError):
    """A coloring produced internally failed re-verification."""
