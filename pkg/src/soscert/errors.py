"""Structured errors shared across the kernel."""

from __future__ import annotations


class SoscertError(Exception):
    """Base class for all kernel errors."""


class VariableMismatchError(SoscertError, ValueError):
    """Two objects were combined over different variable lists."""

    def __init__(self, left: tuple[str, ...], right: tuple[str, ...]):
        self.left = left
        self.right = right
        super().__init__(f"variable mismatch: {left!r} vs {right!r}")


class ParseError(SoscertError, ValueError):
    """Syntax error in the polynomial grammar, with position information."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class BudgetExceededError(SoscertError, RuntimeError):
    """A computation exceeded its configured step budget."""

    def __init__(self, budget: int, context: str = "groebner"):
        self.budget = budget
        self.context = context
        super().__init__(f"budget exceeded: {budget} steps ({context})")


class NotOnVarietyError(SoscertError, ValueError):
    """A point was required to lie on a variety but a generator did not vanish."""

    def __init__(self, generator: str, value: str):
        self.generator = generator
        self.value = value
        super().__init__(f"point is not on the variety: {generator} evaluates to {value}")
