"""Exception types raised across the package."""

from __future__ import annotations


class KGraphError(Exception):
    """Base class for all errors raised by :mod:`kgraph`."""


class NotComposable(KGraphError):
    pass


class DegreeOutOfRange(KGraphError):
    pass


class BoundExceeded(KGraphError):
    pass


class PointOutOfRange(KGraphError):
    pass


class InvalidKGraph(KGraphError):
    """Raised when an operation needs a validated k-graph and gets something else."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class Disconnected(KGraphError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"graph has {len(components)} components: {components}")


class NotAClosedSurface(KGraphError):
    pass


class LabelingInvalid(KGraphError):
    pass


class NotASubgroup(KGraphError):
    pass


class NotAMorphism(KGraphError):
    pass


class BasepointMismatch(KGraphError):
    pass


class UnknownVertex(KGraphError):
    pass


class InvalidTower(KGraphError):
    pass


class NotAnAction(KGraphError):
    pass


class ParseError(KGraphError):
    """Syntax error in one of the text formats; carries 1-based line/column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
