"""Orthogonal relational systems and orthogroupoids on finite carriers."""

from .model import (
    Carrier,
    Check,
    CheckReport,
    FormatError,
    Groupoid,
    OrthokitError,
    RelationalSystem,
    SemanticError,
    parse,
    serialize,
    validate,
    zero_of,
)

__all__ = [
    "Carrier",
    "Check",
    "CheckReport",
    "FormatError",
    "Groupoid",
    "OrthokitError",
    "RelationalSystem",
    "SemanticError",
    "parse",
    "serialize",
    "validate",
    "zero_of",
]
