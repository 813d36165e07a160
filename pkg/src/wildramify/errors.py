"""Exception hierarchy shared by every module."""

from __future__ import annotations

import os

DEFAULT_CAP = 2**20


class WildRamifyError(Exception):
    """Base class for all library errors."""


class DivisionByZero(WildRamifyError, ZeroDivisionError):
    pass


class RingMismatch(WildRamifyError, ValueError):
    pass


class ArityMismatch(WildRamifyError, ValueError):
    pass


class NotAPthPower(WildRamifyError, ValueError):
    pass


class ParseError(WildRamifyError, ValueError):
    """Malformed polynomial text; carries the offending token and its byte offset."""

    def __init__(self, message: str, offset: int = 0, token: str = ""):
        self.message = message
        self.offset = offset
        self.token = token
        super().__init__(f"{message} at byte {offset} (token {token!r})")


class SchemaError(WildRamifyError, ValueError):
    """A JSON input document violates its schema; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"field {field!r}: {message}")


class CapExceeded(WildRamifyError):
    pass


class LengthCapExceeded(CapExceeded):
    pass


class DegreeCapExceeded(CapExceeded):
    pass


class InvalidRelation(WildRamifyError, ValueError):
    pass


class NoRelationFound(WildRamifyError):
    pass


class InsufficientDepth(WildRamifyError):
    pass


class TrivialClass(WildRamifyError):
    pass


class ShapeMismatch(WildRamifyError, ValueError):
    pass


def enumeration_cap(cap: int | None = None) -> int:
    """Resolve an enumeration cap: explicit argument, then WILDRAMIFY_CAP, then 2^20."""
    if cap is not None:
        return cap
    raw = os.environ.get("WILDRAMIFY_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError("WILDRAMIFY_CAP", f"not an integer: {raw!r}") from None
    if value < 1:
        raise SchemaError("WILDRAMIFY_CAP", "must be positive")
    return value
