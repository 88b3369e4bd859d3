"""Canonical printer for regex terms.

Character-set terms print from their interval denotation (single char,
``.``, ``\\d``-style classes, or a bracket class), so semantically equal
sets print identically.  Expressions use the usual precedence chain
alternation < concatenation < repetition < atom, inserting parentheses
only where re-parsing would otherwise change the tree.

Printing is canonicalizing: ``parse(print(t))`` may differ structurally
from ``t`` (e.g. re-associated unions) but always prints back to the same
string, and re-parsing that string is a fixpoint.
"""

from __future__ import annotations

from ..dsl import Term
from .lang import DEFAULT_ALPHABET, SORT_E, SORT_S
from .matcher import charset_intervals

__all__ = ["print_regex"]

_EXPR_SPECIAL = set("\\.[]{}()*+?|^$")
_CLASS_SPECIAL = set("\\]^-")
_CONTROL_NAMES = {"\t": "\\t", "\n": "\\n", "\r": "\\r", "\f": "\\f", "\v": "\\v"}

_PREC_ALT = 0
_PREC_CAT = 1
_PREC_REP = 2
_PREC_ATOM = 3

def _escape(ch: str, special: set) -> str:
    if ch in _CONTROL_NAMES:
        return _CONTROL_NAMES[ch]
    if ch in special:
        return "\\" + ch
    if ord(ch) < 0x20 or ord(ch) > 0x7E:
        return f"\\x{ord(ch):02x}"
    return ch


def _class_items(intervals) -> str:
    parts = []
    for lo, hi in intervals:
        if hi - lo >= 2:
            parts.append(f"{_escape(chr(lo), _CLASS_SPECIAL)}-{_escape(chr(hi), _CLASS_SPECIAL)}")
        else:
            parts.extend(_escape(chr(c), _CLASS_SPECIAL) for c in range(lo, hi + 1))
    return "".join(parts)


def _print_set(t: Term, alphabet) -> str:
    """An atom-precedence rendering of a sort-``s`` term."""
    if t.const is not None:
        return t.const.name
    if t.op.name == "negate":
        inner = charset_intervals(t.children[0], alphabet)
        return "[^" + _class_items(inner) + "]"
    intervals = charset_intervals(t, alphabet)
    if intervals == (alphabet,):
        return "."
    if len(intervals) == 1 and intervals[0][0] == intervals[0][1]:
        return _escape(chr(intervals[0][0]), _EXPR_SPECIAL)
    if not intervals:
        return "[^" + _class_items((alphabet,)) + "]"
    return "[" + _class_items(intervals) + "]"


def _wrap(text: str, prec: int, needed: int) -> str:
    return f"({text})" if prec < needed else text


def _print_expr(t: Term, alphabet) -> tuple[str, int]:
    """Render an e-sort term, returning (text, precedence of the result)."""
    name = t.op.name if t.op is not None else None
    if t.sort == SORT_S:
        return _print_set(t, alphabet), _PREC_ATOM
    if name == "fromCharSet":
        return _print_set(t.children[0], alphabet), _PREC_ATOM
    if name == "alter":
        left, lp = _print_expr(t.children[0], alphabet)
        right, rp = _print_expr(t.children[1], alphabet)
        return f"{_wrap(left, lp, _PREC_ALT)}|{_wrap(right, rp, _PREC_ALT + 1)}", _PREC_ALT
    if name == "concat":
        left, lp = _print_expr(t.children[0], alphabet)
        right, rp = _print_expr(t.children[1], alphabet)
        return _wrap(left, lp, _PREC_CAT) + _wrap(right, rp, _PREC_CAT), _PREC_CAT
    if name in ("quant", "quantMin"):
        body, bp = _print_expr(t.children[0], alphabet)
        body = _wrap(body, bp, _PREC_ATOM)
        lo = t.children[1].const.value
        if name == "quantMin":
            suffix = {0: "*", 1: "+"}.get(lo, f"{{{lo},}}")
        else:
            hi = t.children[2].const.value
            if (lo, hi) == (0, 1):
                suffix = "?"
            elif lo == hi:
                suffix = f"{{{lo}}}"
            else:
                suffix = f"{{{lo},{hi}}}"
        return body + suffix, _PREC_REP
    raise ValueError(f"cannot print term of sort {t.sort.name}")


def print_regex(t: Term, alphabet=DEFAULT_ALPHABET) -> str:
    """Surface syntax for an expression or character-set term."""
    if t.sort not in (SORT_E, SORT_S):
        raise ValueError("only expression and character-set terms are printable")
    return _print_expr(t, alphabet)[0]
