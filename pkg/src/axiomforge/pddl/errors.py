"""Diagnostics for PDDL parsing, validation, and linking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

# Diagnostic codes. Parser and validator diagnostics carry exact source
# positions; link-time diagnostics operate on ASTs and use position 0:0.
SYNTAX = "syntax-error"
UNSUPPORTED = "unsupported-construct"
ARITY_MISMATCH = "arity-mismatch"
UNBOUND_VARIABLE = "unbound-variable"
DUPLICATE_NAME = "duplicate-name"
DUPLICATE_OBJECT = "duplicate-object"
DOMAIN_NAME_MISMATCH = "domain-name-mismatch"
UNDECLARED_PREDICATE = "undeclared-predicate"
UNDECLARED_OBJECT = "undeclared-object"
UNDECLARED_CONSTANT = "undeclared-constant"
TYPE_ERROR = "type-error"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.code}: {self.message}"


class PddlError(Exception):
    """Raised when a PDDL text cannot be turned into a valid AST."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))
