"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ExtremalLabError(Exception):
    """Base class for all package errors."""


class CapacityError(ExtremalLabError, ValueError):
    """A graph or search would exceed a configured size limit."""


class PreconditionError(ExtremalLabError, ValueError):
    """An operation was called on inputs outside its domain."""


class ParameterError(ExtremalLabError, ValueError):
    """Family parameters do not admit the requested construction."""


class CountOverflowError(ExtremalLabError, OverflowError):
    """A clique count does not fit in an unsigned 64-bit integer."""


class Graph6ParseError(ExtremalLabError, ValueError):
    """Malformed graph6 text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CacheIntegrityError(ExtremalLabError):
    """A cached search record failed re-validation."""
