"""The regular-expression DSL: sorts, operators, constants and builders.

Sorts: ``i`` (integers), ``c`` (characters), ``s`` (character sets),
``e`` (expressions, the closed sort).  Operators:

    fromChar    : c -> s        single character as a set
    range       : c x c -> s    inclusive character range
    union       : s x s -> s    set union
    negate      : s -> s        complement within the alphabet
    any         : -> s          the whole alphabet
    quant       : e x i x i -> e   between i and j repetitions
    quantMin    : e x i -> e       at least i repetitions
    alter       : e x e -> e       alternation
    concat      : e x e -> e       concatenation
    fromCharSet : s -> e           lift a set to a single-character expression

Named character classes (``\\d``, ``\\s``, ``\\w``) are constants of sort
``s`` so that they count as single atoms, not expanded unions.  Standard
components are the integers 0 and 1 plus those three classes.
"""

from __future__ import annotations

from ..dsl import Constant, DslDefinition, Sort, Term, make_operators

SORT_I = Sort("i")
SORT_C = Sort("c")
SORT_S = Sort("s")
SORT_E = Sort("e")

OPERATORS = make_operators(
    [
        ("fromChar", [SORT_C], SORT_S),
        ("range", [SORT_C, SORT_C], SORT_S),
        ("union", [SORT_S, SORT_S], SORT_S),
        ("negate", [SORT_S], SORT_S),
        ("any", [], SORT_S),
        ("quant", [SORT_E, SORT_I, SORT_I], SORT_E),
        ("quantMin", [SORT_E, SORT_I], SORT_E),
        ("alter", [SORT_E, SORT_E], SORT_E),
        ("concat", [SORT_E, SORT_E], SORT_E),
        ("fromCharSet", [SORT_S], SORT_E),
    ]
)

_OPS = {op.name: op for op in OPERATORS}

# Default matching alphabet for any()/negate(): printable ASCII.
DEFAULT_ALPHABET = (0x20, 0x7E)

# Named character classes, as (name, interval list) pairs.
CLASS_INTERVALS = {
    "d": ((ord("0"), ord("9")),),
    "s": ((9, 13), (32, 32)),
    "w": (
        (ord("0"), ord("9")),
        (ord("A"), ord("Z")),
        (ord("_"), ord("_")),
        (ord("a"), ord("z")),
    ),
}


def int_const(n: int) -> Term:
    if n < 0:
        raise ValueError("integer constants are non-negative")
    return Term(const=Constant(n, SORT_I))


def char_const(ch: str) -> Term:
    if len(ch) != 1:
        raise ValueError("character constant must be a single character")
    return Term(const=Constant(ch, SORT_C))


def named_class(name: str) -> Term:
    if name not in CLASS_INTERVALS:
        raise ValueError(f"unknown character class \\{name}")
    return Term(const=Constant(("class", name), SORT_S, name=f"\\{name}"))


def from_char(ch: str) -> Term:
    return Term(op=_OPS["fromChar"], children=[char_const(ch)])


def char_range(lo: str, hi: str) -> Term:
    return Term(op=_OPS["range"], children=[char_const(lo), char_const(hi)])


def set_union(a: Term, b: Term) -> Term:
    return Term(op=_OPS["union"], children=[a, b])


def negate(a: Term) -> Term:
    return Term(op=_OPS["negate"], children=[a])


def any_char() -> Term:
    return Term(op=_OPS["any"])


def quant(e: Term, lo: int, hi: int) -> Term:
    return Term(op=_OPS["quant"], children=[e, int_const(lo), int_const(hi)])


def quant_min(e: Term, lo: int) -> Term:
    return Term(op=_OPS["quantMin"], children=[e, int_const(lo)])


def alter(a: Term, b: Term) -> Term:
    return Term(op=_OPS["alter"], children=[a, b])


def concat(a: Term, b: Term) -> Term:
    return Term(op=_OPS["concat"], children=[a, b])


def from_char_set(s: Term) -> Term:
    return Term(op=_OPS["fromCharSet"], children=[s])


REGEX_DSL = DslDefinition(
    name="regex",
    sorts=frozenset({SORT_I, SORT_C, SORT_S, SORT_E}),
    operators=OPERATORS,
    closed_sort=SORT_E,
    standard_components=(
        int_const(0),
        int_const(1),
        named_class("d"),
        named_class("s"),
        named_class("w"),
    ),
)
