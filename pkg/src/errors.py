"""Exception hierarchy for the workbench"""

from typing import FrozenSet, Iterable, Optional


class WorkbenchError(Exception):
    """Base class for all workbench errors"""


class ExpressionError(WorkbenchError):
    """Malformed expression text"""


class ExpressionSyntaxError(ExpressionError):
    """Parse failure at a byte offset"""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected: FrozenSet[str] = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r} at offset {offset}")


class DomainError(WorkbenchError):
    """Evaluation inside the guard radius of a pole or branch point"""

    def __init__(self, message: str, point: Optional[complex] = None, subexpression: Optional[str] = None):
        self.point = point
        self.subexpression = subexpression
        detail = message
        if subexpression is not None:
            detail += f" in {subexpression}"
        if point is not None:
            detail += f" at z = {point!r}"
        super().__init__(detail)


class EvaluationError(WorkbenchError):
    """Non-finite or failed evaluation at a sample point"""

    def __init__(self, message: str, point: Optional[complex] = None):
        self.point = point
        super().__init__(message if point is None else f"{message} at z = {point!r}")


class InvalidGeometryError(WorkbenchError):
    """Invalid contour, region, or rendering window"""


class ExcessiveSkipsError(WorkbenchError):
    """Too many non-evaluable points in a grid"""

    def __init__(self, n_skipped: int, n_points: int, limit: float):
        self.n_skipped = n_skipped
        self.n_points = n_points
        self.limit = limit
        super().__init__(
            f"{n_skipped} of {n_points} points skipped, above the tolerated fraction {limit:g}"
        )


class UsageError(WorkbenchError):
    """Invalid command-line usage or out-of-range count or order argument"""
