"""Parser for standard regular-expression surface syntax.

Grammar (precedence low to high):

    regex   := alt
    alt     := cat ('|' cat)*            -- alter, left-associative
    cat     := rep rep*                  -- concat, right-associative
    rep     := atom ('*'|'+'|'?'|'{m}'|'{m,}'|'{m,n}')*
    atom    := '(' alt ')' | '[' class ']' | '.' | escape | literal

``(...)`` is pure grouping (no AST node).  Unsupported constructs --
``(?...)`` groups, anchors, backreferences, lookaround -- raise
``ParseError`` with a position; callers treat such candidates as
discardable, never fatal.
"""

from __future__ import annotations

from ..dsl import Term
from . import lang

__all__ = ["ParseError", "parse_regex"]

_SPECIAL = set("\\.[]{}()*+?|^$")

_CONTROL_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", "f": "\f", "v": "\v", "0": "\0"}


class ParseError(ValueError):
    """Malformed or unsupported regex surface syntax."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def peek(self) -> str:
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    # ----- expression levels -------------------------------------------

    def parse(self) -> Term:
        if not self.src:
            raise self.error("empty pattern")
        term = self.alt()
        if self.pos != len(self.src):
            raise self.error(f"unexpected {self.peek()!r}")
        return term

    def alt(self) -> Term:
        term = self.cat()
        while self.peek() == "|":
            self.take()
            term = lang.alter(term, self.cat())
        return term

    def cat(self) -> Term:
        parts = [self.rep()]
        while self.peek() not in ("", "|", ")"):
            parts.append(self.rep())
        term = parts[-1]
        for part in reversed(parts[:-1]):
            term = lang.concat(part, term)
        return term

    def rep(self) -> Term:
        term = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                term = lang.quant_min(term, 0)
            elif ch == "+":
                self.take()
                term = lang.quant_min(term, 1)
            elif ch == "?":
                self.take()
                term = lang.quant(term, 0, 1)
            elif ch == "{":
                term = self.braces(term)
            else:
                return term

    def braces(self, term: Term) -> Term:
        assert self.take() == "{"
        lo = self.integer()
        ch = self.take()
        if ch == "}":
            return lang.quant(term, lo, lo)
        if ch != ",":
            self.pos -= 1
            raise self.error("expected ',' or '}' in counted repetition")
        if self.peek() == "}":
            self.take()
            return lang.quant_min(term, lo)
        hi = self.integer()
        if self.take() != "}":
            self.pos -= 1
            raise self.error("expected '}' in counted repetition")
        return lang.quant(term, lo, hi)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.take()
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.src[start : self.pos])

    def atom(self) -> Term:
        ch = self.peek()
        if ch == "":
            raise self.error("unexpected end of pattern")
        if ch == "(":
            self.take()
            if self.peek() == "?":
                raise self.error("unsupported group syntax '(?'")
            if self.peek() == ")":
                raise self.error("empty group")
            inner = self.alt()
            if self.take() != ")":
                self.pos -= 1
                raise self.error("unbalanced parenthesis")
            return inner
        if ch == "[":
            return lang.from_char_set(self.char_class())
        if ch == ".":
            self.take()
            return lang.from_char_set(lang.any_char())
        if ch == "\\":
            return lang.from_char_set(self.escape())
        if ch in "*+?":
            raise self.error("quantifier with nothing to repeat")
        if ch in ")|]{}^$":
            raise self.error(f"unsupported or misplaced {ch!r}")
        self.take()
        return lang.from_char_set(lang.from_char(ch))

    # ----- character sets ----------------------------------------------

    def escape(self) -> Term:
        """A backslash escape outside a bracket class, as a set term."""
        assert self.take() == "\\"
        ch = self.take()
        if ch == "":
            raise self.error("dangling backslash")
        if ch in lang.CLASS_INTERVALS:
            return lang.named_class(ch)
        return lang.from_char(self.resolve_escape(ch))

    def resolve_escape(self, ch: str) -> str:
        if ch in _CONTROL_ESCAPES:
            return _CONTROL_ESCAPES[ch]
        if ch == "x":
            digits = self.src[self.pos : self.pos + 2]
            if len(digits) != 2 or not all(c in "0123456789abcdefABCDEF" for c in digits):
                raise self.error("malformed \\x escape")
            self.pos += 2
            return chr(int(digits, 16))
        return ch

    def char_class(self) -> Term:
        assert self.take() == "["
        negated = False
        if self.peek() == "^":
            self.take()
            negated = True
        items: list[Term] = []
        while True:
            ch = self.peek()
            if ch == "":
                raise self.error("unterminated character class")
            if ch == "]" and items:
                self.take()
                break
            items.append(self.class_item())
        term = items[0]
        for item in items[1:]:
            term = lang.set_union(term, item)
        return lang.negate(term) if negated else term

    def class_item(self) -> Term:
        ch = self.take()
        if ch == "\\":
            esc = self.take()
            if esc == "":
                raise self.error("dangling backslash")
            if esc in lang.CLASS_INTERVALS:
                return lang.named_class(esc)
            lo = self.resolve_escape(esc)
        else:
            lo = ch
        if self.peek() == "-" and self.src[self.pos + 1 : self.pos + 2] not in ("", "]"):
            self.take()
            hi_ch = self.take()
            if hi_ch == "\\":
                esc = self.take()
                if esc == "" or esc in lang.CLASS_INTERVALS:
                    raise self.error("bad range endpoint")
                hi_ch = self.resolve_escape(esc)
            if ord(lo) > ord(hi_ch):
                raise self.error("reversed character range")
            return lang.char_range(lo, hi_ch)
        return lang.from_char(lo)


def parse_regex(src: str) -> Term:
    """Parse surface syntax into a regex term; raises ParseError."""
    return _Parser(src).parse()
