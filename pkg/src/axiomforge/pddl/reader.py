"""S-expression reader: text -> positioned node tree.

Identifiers are lowercased here, `;` comments stripped, and every node
remembers the line/column it started on (both 1-based).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SYNTAX, Diagnostic, PddlError


@dataclass(frozen=True)
class SAtom:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    col: int


SNode = SAtom | SList

_DELIMS = "()"


def _tokens(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _DELIMS:
            yield ch, line, col
            i += 1
            col += 1
            continue
        start = i
        start_col = col
        while i < n and text[i] not in " \t\r\n;()":
            i += 1
            col += 1
        yield text[start:i].lower(), line, start_col


def read_one(text: str) -> SNode:
    """Read exactly one top-level s-expression; reject trailing content."""
    stack: list[tuple[list, int, int]] = []
    result: SNode | None = None
    for tok, line, col in _tokens(text):
        if result is not None:
            raise PddlError([Diagnostic(SYNTAX, "unexpected content after top-level form", line, col)])
        if tok == "(":
            stack.append(([], line, col))
        elif tok == ")":
            if not stack:
                raise PddlError([Diagnostic(SYNTAX, "unbalanced ')'", line, col)])
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            if stack:
                stack[-1][0].append(node)
            else:
                result = node
        else:
            atom = SAtom(tok, line, col)
            if stack:
                stack[-1][0].append(atom)
            else:
                raise PddlError([Diagnostic(SYNTAX, f"expected '(' but found '{tok}'", line, col)])
    if stack:
        _, l0, c0 = stack[-1]
        raise PddlError([Diagnostic(SYNTAX, "unclosed '('", l0, c0)])
    if result is None:
        raise PddlError([Diagnostic(SYNTAX, "empty input", 1, 1)])
    return result
