"""Parser for conventional CSS selector syntax.

Supported: tags, ``*``, ``.class``, ``#id``, attribute tests (``[a]``,
``[a=v]``, ``[a^=v]``, ``[a$=v]``, ``[a*=v]``, ``[class~=v]``), the
combinators ``>``, descendant whitespace and ``+``, comma-separated
unions, and the pseudo-classes ``:not(...)``, ``:nth-child(an+b)``,
``:nth-last-child(an+b)``, ``:first-child``, ``:last-child``.

Dynamic or unsupported pseudo-classes (``:hover``, ``:focus``,
``:checked``, anything unknown) raise ``ParseError`` so that callers can
discard the candidate.
"""

from __future__ import annotations

import re

from ..dsl import Term
from . import lang

__all__ = ["ParseError", "parse_selector"]


class ParseError(ValueError):
    """Malformed or unsupported selector surface syntax."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*|-[A-Za-z_][A-Za-z0-9_-]*")
_NTH = re.compile(
    r"""\s*(?:
        (?P<odd>odd) | (?P<even>even) |
        (?P<an>[+-]?\d*)n(?:\s*(?P<sign>[+-])\s*(?P<b>\d+))? |
        (?P<only>[+-]?\d+)
    )\s*$""",
    re.VERBOSE,
)


def _nth_term(expr: str, position: int) -> Term:
    m = _NTH.match(expr)
    if m is None:
        raise ParseError(f"malformed nth-child expression {expr!r}", position)
    if m.group("odd"):
        return lang.multiple_offset(2, 1)
    if m.group("even"):
        return lang.multiple_offset(2, 0)
    if m.group("only") is not None:
        return lang.int_const(int(m.group("only")))
    an = m.group("an")
    step = 1 if an in ("", "+") else -1 if an == "-" else int(an)
    offset = 0
    if m.group("b") is not None:
        offset = int(m.group("b"))
        if m.group("sign") == "-":
            offset = -offset
    if step == 1 and offset == 0:
        # plain "n": every position
        return lang.multiple_offset(1, 1)
    return lang.multiple_offset(step, offset)


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def peek(self) -> str:
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def skip_ws(self) -> bool:
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos] in " \t\n\r":
            self.pos += 1
        return self.pos > start

    def ident(self) -> str:
        m = _IDENT.match(self.src, self.pos)
        if m is None:
            raise self.error("expected an identifier")
        self.pos = m.end()
        return m.group(0)

    # ----- selector structure ------------------------------------------

    def parse(self) -> Term:
        term = self.complex_selector()
        self.skip_ws()
        while self.peek() == ",":
            self.pos += 1
            term = lang.union(term, self.complex_selector())
            self.skip_ws()
        if self.pos != len(self.src):
            raise self.error(f"unexpected {self.peek()!r}")
        return term

    def complex_selector(self) -> Term:
        self.skip_ws()
        term = self.compound()
        while True:
            had_ws = self.skip_ws()
            ch = self.peek()
            if ch == ">":
                self.pos += 1
                self.skip_ws()
                term = lang.children_of(term, self.compound())
            elif ch == "+":
                self.pos += 1
                self.skip_ws()
                term = lang.right_sibling(term, self.compound())
            elif had_ws and ch not in ("", ",", ")"):
                term = lang.descendants_of(term, self.compound())
            else:
                return term

    def compound(self) -> Term:
        start = self.pos
        ch = self.peek()
        if ch == "*":
            self.pos += 1
            base = lang.any_node()
        elif _IDENT.match(self.src, self.pos):
            base = lang.tag_equals(lang.any_node(), self.ident())
        elif ch and ch in ".#[:":
            base = lang.any_node()
        else:
            raise self.error("expected a selector")
        while True:
            ch = self.peek()
            if ch == ".":
                self.pos += 1
                base = lang.class_contains(base, self.ident())
            elif ch == "#":
                self.pos += 1
                base = lang.attr_equals(base, "id", self.ident())
            elif ch == "[":
                base = self.attribute(base)
            elif ch == ":":
                base = self.pseudo(base)
            else:
                break
        if self.pos == start:  # pragma: no cover - guarded above
            raise self.error("expected a selector")
        return base

    def attribute(self, base: Term) -> Term:
        assert self.peek() == "["
        self.pos += 1
        self.skip_ws()
        attr = self.ident()
        self.skip_ws()
        ch = self.peek()
        if ch == "]":
            self.pos += 1
            return lang.attr_contains(base, attr, "")
        op = ""
        if ch and ch in "^$*~":
            op = ch
            self.pos += 1
        if self.peek() != "=":
            raise self.error("expected '=' in attribute test")
        self.pos += 1
        self.skip_ws()
        value = self.attr_value()
        self.skip_ws()
        if self.peek() != "]":
            raise self.error("expected ']'")
        self.pos += 1
        if op == "":
            return lang.attr_equals(base, attr, value)
        if op == "^":
            return lang.attr_starts_with(base, attr, value)
        if op == "$":
            return lang.attr_ends_with(base, attr, value)
        if op == "*":
            return lang.attr_contains(base, attr, value)
        # op == "~": token match, supported for the class attribute only
        if attr != "class":
            raise self.error("token match '~=' is only supported on class")
        return lang.class_contains(base, value)

    def attr_value(self) -> str:
        ch = self.peek()
        if ch and ch in "'\"":
            quote = ch
            self.pos += 1
            start = self.pos
            while self.peek() not in ("", quote):
                self.pos += 1
            if self.peek() != quote:
                raise self.error("unterminated string")
            value = self.src[start : self.pos]
            self.pos += 1
            return value
        start = self.pos
        while self.peek() not in ("", "]", " ", "\t"):
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an attribute value")
        return self.src[start : self.pos]

    def pseudo(self, base: Term) -> Term:
        assert self.peek() == ":"
        start = self.pos
        self.pos += 1
        if self.peek() == ":":
            raise self.error("pseudo-elements are not supported")
        name = self.ident().lower()
        if name == "first-child":
            return lang.nth_child(base, lang.int_const(1))
        if name == "last-child":
            return lang.nth_last_child(base, lang.int_const(1))
        if name in ("not", "nth-child", "nth-last-child"):
            if self.peek() != "(":
                raise self.error(f"':{name}' requires parentheses")
            self.pos += 1
            if name == "not":
                inner = self.complex_selector()
                self.skip_ws()
                if self.peek() != ")":
                    raise self.error("expected ')'")
                self.pos += 1
                return lang.not_in(base, inner)
            arg_start = self.pos
            depth = 1
            while depth and self.peek() != "":
                if self.peek() == "(":
                    depth += 1
                elif self.peek() == ")":
                    depth -= 1
                if depth:
                    self.pos += 1
            if self.peek() != ")":
                raise self.error("expected ')'")
            expr = self.src[arg_start : self.pos]
            self.pos += 1
            index = _nth_term(expr, arg_start)
            return (
                lang.nth_child(base, index)
                if name == "nth-child"
                else lang.nth_last_child(base, index)
            )
        self.pos = start
        raise self.error(f"unsupported pseudo-class ':{name}'")


def parse_selector(src: str) -> Term:
    """Parse CSS selector surface syntax; raises ParseError."""
    if not src.strip():
        raise ParseError("empty selector", 0)
    return _Parser(src).parse()
