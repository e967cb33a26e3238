"""Exception and warning types shared across the package."""

from __future__ import annotations


class GeomCutError(Exception):
    """Base class for all package errors."""


class InvalidInstanceError(GeomCutError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class DegenerateInput(GeomCutError):
    pass


class ObjectFaceNotFound(GeomCutError):
    pass


class InvariantViolation(GeomCutError):
    """An internal consistency check failed (a bug, not bad input)."""


class NoSeparationNeeded(GeomCutError):
    pass


class EmptyColorClass(GeomCutError):
    pass


class EmptyColorClassWarning(UserWarning):
    pass


class TooLarge(GeomCutError):
    """Exhaustive search refused because it exceeds its budget."""


class ProvenanceMismatch(GeomCutError):
    pass


class SinkWriteFailure(GeomCutError):
    pass


class BadThickness(GeomCutError):
    pass


class GenerationTimeout(GeomCutError):
    pass


class MalformedTree(GeomCutError):
    pass


class ParseError(GeomCutError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class BadCoordinate(ParseError):
    pass
