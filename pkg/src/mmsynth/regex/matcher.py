"""Anchored regular-expression matching.

A term is compiled once into a flat program (parallel numpy arrays, see
``mmsynth.kernels._pykernels`` for the node layout) and then evaluated by
the selected kernel backend.  Character-set sub-trees are collapsed into
sorted interval lists at compile time, so the runtime never walks the
term again.

Matching is whole-string (anchored): ``a`` does not accept ``"ba"``.
Terms of sorts ``i`` and ``c`` reject every string; a term of sort ``s``
behaves as a single-character expression.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .. import kernels
from ..dsl import Term
from .lang import CLASS_INTERVALS, DEFAULT_ALPHABET, SORT_C, SORT_E, SORT_I, SORT_S

__all__ = ["charset_intervals", "compile_term", "match_full", "interpretation", "FlatProgram"]


def _merge_intervals(intervals: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Sort and coalesce overlapping/adjacent intervals; drop empty ones."""
    items = sorted((lo, hi) for lo, hi in intervals if lo <= hi)
    merged: list[list[int]] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def _complement(
    intervals: Sequence[tuple[int, int]], alphabet: tuple[int, int]
) -> tuple[tuple[int, int], ...]:
    lo, hi = alphabet
    out = []
    cur = lo
    for a, b in intervals:
        a = max(a, lo)
        b = min(b, hi)
        if a > b:
            continue
        if cur < a:
            out.append((cur, a - 1))
        cur = max(cur, b + 1)
    if cur <= hi:
        out.append((cur, hi))
    return tuple(out)


def charset_intervals(
    t: Term, alphabet: tuple[int, int] = DEFAULT_ALPHABET
) -> tuple[tuple[int, int], ...]:
    """Character intervals denoted by a sort-``s`` term."""
    if t.sort != SORT_S:
        raise ValueError(f"expected a character-set term, got sort {t.sort.name}")
    if t.const is not None:
        kind, name = t.const.value
        if kind != "class":  # pragma: no cover - no other s-sort constants exist
            raise ValueError(f"unknown set constant {t.const!r}")
        return _merge_intervals(CLASS_INTERVALS[name])
    name = t.op.name
    if name == "fromChar":
        code = ord(t.children[0].const.value)
        return ((code, code),)
    if name == "range":
        lo = ord(t.children[0].const.value)
        hi = ord(t.children[1].const.value)
        return _merge_intervals([(lo, hi)])
    if name == "union":
        return _merge_intervals(
            charset_intervals(t.children[0], alphabet) + charset_intervals(t.children[1], alphabet)
        )
    if name == "negate":
        return _complement(charset_intervals(t.children[0], alphabet), alphabet)
    if name == "any":
        return (alphabet,)
    raise ValueError(f"operator {name} does not build a character set")


class FlatProgram:
    """A regex term flattened to the kernel's array representation."""

    __slots__ = ("kind", "a1", "a2", "a3", "iv_off", "iv_len", "iv_lo", "iv_hi", "nullable", "root")

    def __init__(self, nodes, intervals, nullable, root: int):
        as32 = lambda xs: np.asarray(xs, dtype=np.int32)
        self.kind = as32([n[0] for n in nodes])
        self.a1 = as32([n[1] for n in nodes])
        self.a2 = as32([n[2] for n in nodes])
        self.a3 = as32([n[3] for n in nodes])
        self.iv_off = as32([n[4] for n in nodes])
        self.iv_len = as32([n[5] for n in nodes])
        self.iv_lo = as32([iv[0] for iv in intervals])
        self.iv_hi = as32([iv[1] for iv in intervals])
        self.nullable = as32(nullable)
        self.root = root

    def matches(self, s: str) -> bool:
        codes = np.fromiter((ord(ch) for ch in s), dtype=np.int32, count=len(s))
        return kernels.match_program(
            self.kind,
            self.a1,
            self.a2,
            self.a3,
            self.iv_off,
            self.iv_len,
            self.iv_lo,
            self.iv_hi,
            self.nullable,
            self.root,
            codes,
        )


_KIND_CHARSET = 0
_KIND_CONCAT = 1
_KIND_ALTER = 2
_KIND_QUANT = 3

# None marks terms whose sort cannot match any string (i and c roots).
_compile_cache: dict[tuple[Term, tuple[int, int]], Optional[FlatProgram]] = {}


def _int_value(t: Term) -> int:
    if t.const is None or not isinstance(t.const.value, int):
        raise ValueError("quantifier bound is not an integer constant")
    return t.const.value


def compile_term(
    t: Term, alphabet: tuple[int, int] = DEFAULT_ALPHABET
) -> Optional[FlatProgram]:
    """Compile a term to a flat program; None for unmatchable sorts."""
    key = (t, alphabet)
    try:
        return _compile_cache[key]
    except KeyError:
        pass
    if t.sort in (SORT_I, SORT_C):
        _compile_cache[key] = None
        return None
    nodes: list[tuple[int, int, int, int, int, int]] = []
    intervals: list[tuple[int, int]] = []
    nullable: list[int] = []

    def emit(term: Term) -> int:
        if term.sort == SORT_S or (term.op is not None and term.op.name == "fromCharSet"):
            target = term.children[0] if term.sort == SORT_E else term
            ivs = charset_intervals(target, alphabet)
            off = len(intervals)
            intervals.extend(ivs)
            nodes.append((_KIND_CHARSET, -1, -1, -1, off, len(ivs)))
            nullable.append(0)
            return len(nodes) - 1
        name = term.op.name
        if name == "concat":
            left = emit(term.children[0])
            right = emit(term.children[1])
            nodes.append((_KIND_CONCAT, left, right, -1, 0, 0))
            nullable.append(int(nullable[left] and nullable[right]))
        elif name == "alter":
            left = emit(term.children[0])
            right = emit(term.children[1])
            nodes.append((_KIND_ALTER, left, right, -1, 0, 0))
            nullable.append(int(nullable[left] or nullable[right]))
        elif name == "quant":
            child = emit(term.children[0])
            lo = _int_value(term.children[1])
            hi = _int_value(term.children[2])
            nodes.append((_KIND_QUANT, child, lo, hi, 0, 0))
            nullable.append(int(lo == 0 or nullable[child]) if lo <= hi else 0)
        elif name == "quantMin":
            child = emit(term.children[0])
            lo = _int_value(term.children[1])
            nodes.append((_KIND_QUANT, child, lo, -1, 0, 0))
            nullable.append(int(lo == 0 or nullable[child]))
        else:  # pragma: no cover - exhaustive over e-sort operators
            raise ValueError(f"cannot compile operator {name}")
        return len(nodes) - 1

    root = emit(t)
    program = FlatProgram(nodes, intervals, nullable, root)
    _compile_cache[key] = program
    return program


def match_full(t: Term, s: str, alphabet: tuple[int, int] = DEFAULT_ALPHABET) -> bool:
    """Whole-string acceptance of ``s`` by ``t`` (total: bad sorts reject)."""
    program = compile_term(t, alphabet)
    if program is None:
        return False
    return program.matches(s)


def interpretation(t: Term, inputs: Sequence[str]) -> tuple[bool, ...]:
    """The vector of t's outputs on the given example inputs."""
    program = compile_term(t)
    if program is None:
        return tuple(False for _ in inputs)
    return tuple(program.matches(s) for s in inputs)
