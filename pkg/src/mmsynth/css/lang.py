"""The CSS-selector DSL: sorts, operators, constants and builders.

Sorts: ``s`` (string literals), ``i`` (index sets), ``n`` (node sets, the
closed sort).  The operator set follows the selector algebra: set algebra
(``Union``/``Not``), node filters (tag, attribute and position tests) and
structural combinators (``Children``/``Descendants``/``RightSibling``).

``RightSibling(n1, n2)`` selects nodes in n2 preceded by *some* earlier
sibling in n1 — a general preceding-sibling relation, intentionally wider
than the CSS adjacent-sibling combinator ``+`` that maps onto it.

``ClassContains(n, c)`` is an extension operator giving ``.c`` its proper
whitespace-token semantics on the ``class`` attribute (substring matching
via ``AttributeContains`` would wrongly let ``.a`` match ``class="ab"``).
"""

from __future__ import annotations

from ..dsl import Constant, DslDefinition, Sort, Term, make_operators

SORT_S = Sort("s")
SORT_I = Sort("i")
SORT_N = Sort("n")

OPERATORS = make_operators(
    [
        ("MultipleOffset", [SORT_I, SORT_I], SORT_I),
        ("Any", [], SORT_N),
        ("Union", [SORT_N, SORT_N], SORT_N),
        ("Not", [SORT_N, SORT_N], SORT_N),
        ("TagEquals", [SORT_N, SORT_S], SORT_N),
        ("nthChild", [SORT_N, SORT_I], SORT_N),
        ("nthLastChild", [SORT_N, SORT_I], SORT_N),
        ("AttributeEquals", [SORT_N, SORT_S, SORT_S], SORT_N),
        ("AttributeContains", [SORT_N, SORT_S, SORT_S], SORT_N),
        ("AttributeStartsWith", [SORT_N, SORT_S, SORT_S], SORT_N),
        ("AttributeEndsWith", [SORT_N, SORT_S, SORT_S], SORT_N),
        ("RightSibling", [SORT_N, SORT_N], SORT_N),
        ("Children", [SORT_N, SORT_N], SORT_N),
        ("Descendants", [SORT_N, SORT_N], SORT_N),
        ("ClassContains", [SORT_N, SORT_S], SORT_N),
    ]
)

_OPS = {op.name: op for op in OPERATORS}


def string_const(value: str) -> Term:
    return Term(const=Constant(value, SORT_S))


def int_const(value: int) -> Term:
    return Term(const=Constant(value, SORT_I))


def multiple_offset(step: int, offset: int) -> Term:
    return Term(op=_OPS["MultipleOffset"], children=[int_const(step), int_const(offset)])


def any_node() -> Term:
    return Term(op=_OPS["Any"])


def union(a: Term, b: Term) -> Term:
    return Term(op=_OPS["Union"], children=[a, b])


def not_in(a: Term, b: Term) -> Term:
    return Term(op=_OPS["Not"], children=[a, b])


def tag_equals(n: Term, tag: str) -> Term:
    return Term(op=_OPS["TagEquals"], children=[n, string_const(tag)])


def nth_child(n: Term, i: Term) -> Term:
    return Term(op=_OPS["nthChild"], children=[n, i])


def nth_last_child(n: Term, i: Term) -> Term:
    return Term(op=_OPS["nthLastChild"], children=[n, i])


def attr_equals(n: Term, attr: str, value: str) -> Term:
    return Term(op=_OPS["AttributeEquals"], children=[n, string_const(attr), string_const(value)])


def attr_contains(n: Term, attr: str, value: str) -> Term:
    return Term(op=_OPS["AttributeContains"], children=[n, string_const(attr), string_const(value)])


def attr_starts_with(n: Term, attr: str, value: str) -> Term:
    return Term(
        op=_OPS["AttributeStartsWith"], children=[n, string_const(attr), string_const(value)]
    )


def attr_ends_with(n: Term, attr: str, value: str) -> Term:
    return Term(op=_OPS["AttributeEndsWith"], children=[n, string_const(attr), string_const(value)])


def right_sibling(a: Term, b: Term) -> Term:
    return Term(op=_OPS["RightSibling"], children=[a, b])


def children_of(a: Term, b: Term) -> Term:
    return Term(op=_OPS["Children"], children=[a, b])


def descendants_of(a: Term, b: Term) -> Term:
    return Term(op=_OPS["Descendants"], children=[a, b])


def class_contains(n: Term, token: str) -> Term:
    return Term(op=_OPS["ClassContains"], children=[n, string_const(token)])


CSS_DSL = DslDefinition(
    name="css",
    sorts=frozenset({SORT_S, SORT_I, SORT_N}),
    operators=OPERATORS,
    closed_sort=SORT_N,
    standard_components=(
        int_const(0),
        int_const(1),
        string_const(""),
    ),
)
