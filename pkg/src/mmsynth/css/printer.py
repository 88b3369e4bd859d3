"""Best-effort printer for CSS selector terms.

Terms that have a conventional surface shape (filter chains over ``Any``
joined by combinators) print as ordinary selectors and round-trip through
the parser.  Synthesized terms outside that shape fall back to a
functional notation such as ``Children(tr, td)``; ranking only needs a
string, not re-parseable syntax.
"""

from __future__ import annotations

import re

from ..dsl import Term
from .lang import SORT_I, SORT_N, SORT_S, union

__all__ = ["print_selector"]

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")

_ATTR_OPS = {
    "AttributeEquals": "=",
    "AttributeContains": "*=",
    "AttributeStartsWith": "^=",
    "AttributeEndsWith": "$=",
}

_FILTERS = set(_ATTR_OPS) | {"TagEquals", "nthChild", "nthLastChild", "ClassContains", "Not"}


def _index_expr(t: Term) -> str:
    if t.const is not None:
        return str(t.const.value)
    step = t.children[0].const
    offset = t.children[1].const
    if step is None or offset is None:
        raise ValueError("non-literal index")
    i, j = step.value, offset.value
    if j == 0:
        return f"{i}n"
    return f"{i}n{'+' if j > 0 else '-'}{abs(j)}"


def _string_value(t: Term) -> str:
    if t.const is None:
        raise ValueError("non-literal string")
    return t.const.value


def _compound(t: Term) -> str:
    """Render a filter chain ending at Any(); raises if not chain-shaped."""
    filters: list[str] = []
    tag = None
    node = t
    while True:
        if node.op is None:
            raise ValueError("not a surface-shaped selector")
        name = node.op.name
        if name == "Any":
            break
        if name not in _FILTERS:
            raise ValueError("not a surface-shaped selector")
        base = node.children[0]
        if name == "TagEquals":
            # filters commute, so a tag test anywhere in the chain prints
            # as the compound's leading type selector
            if tag is not None:
                raise ValueError("more than one tag test")
            tag = _string_value(node.children[1])
            if not _IDENT_RE.match(tag):
                raise ValueError("tag is not an identifier")
            node = base
            continue
        if name == "ClassContains":
            token = _string_value(node.children[1])
            if _IDENT_RE.match(token):
                filters.append(f".{token}")
            else:
                filters.append(f'[class~="{token}"]')
        elif name in ("nthChild", "nthLastChild"):
            pseudo = "nth-child" if name == "nthChild" else "nth-last-child"
            filters.append(f":{pseudo}({_index_expr(node.children[1])})")
        elif name == "Not":
            filters.append(f":not({print_selector(node.children[1])})")
        else:
            attr = _string_value(node.children[1])
            value = _string_value(node.children[2])
            if not _IDENT_RE.match(attr):
                raise ValueError("attribute is not an identifier")
            if name == "AttributeEquals" and attr == "id" and _IDENT_RE.match(value):
                filters.append(f"#{value}")
            elif name == "AttributeContains" and value == "":
                filters.append(f"[{attr}]")
            else:
                filters.append(f'[{attr}{_ATTR_OPS[name]}"{value}"]')
        node = base
    filters.reverse()
    head = tag if tag is not None else ("*" if not filters else "")
    return head + "".join(filters)


def _functional(t: Term) -> str:
    if t.const is not None:
        value = t.const.value
        return f'"{value}"' if isinstance(value, str) else str(value)
    args = ", ".join(print_selector(c) for c in t.children)
    return f"{t.op.name}({args})"


_COMBINATORS = {"Children", "Descendants", "RightSibling"}


def _distribute(t: Term) -> Term:
    """Push filters and combinators over Union so more terms have surface
    syntax: F(a ∪ b, x) = F(a, x) ∪ F(b, x) for every filter's node
    argument and for both sides of a combinator.  (A Union in Not's
    negated argument stays put: Not(b, x ∪ y) is not Not(b, x) ∪
    Not(b, y), and the filter is only rewritten at its node argument.)"""
    if t.op is None or t.sort != SORT_N:
        return t
    name = t.op.name
    children = tuple(
        _distribute(c) if c.sort == SORT_N else c for c in t.children
    )
    if name in _FILTERS or name in _COMBINATORS:
        positions = (0, 1) if name in _COMBINATORS else (0,)
        for i in positions:
            child = children[i]
            if child.op is not None and child.op.name == "Union":
                a, b = child.children
                halves = tuple(
                    _distribute(
                        Term(op=t.op, children=children[:i] + (half,) + children[i + 1:])
                    )
                    for half in (a, b)
                )
                return union(halves[0], halves[1])
    if children == t.children:
        return t
    return Term(op=t.op, children=children)


def print_selector(t: Term) -> str:
    """Surface syntax where possible, functional notation otherwise."""
    if t.sort == SORT_N:
        t = _distribute(t)
    return _print(t)


def _print(t: Term) -> str:
    if t.sort == SORT_S:
        return _functional(t)
    if t.sort == SORT_I:
        try:
            return _index_expr(t)
        except ValueError:
            return _functional(t)
    name = t.op.name if t.op is not None else None
    try:
        if name == "Union":
            return f"{print_selector(t.children[0])}, {print_selector(t.children[1])}"
        if name in ("Children", "Descendants", "RightSibling"):
            joiner = {"Children": " > ", "Descendants": " ", "RightSibling": " + "}[name]
            left = print_selector(t.children[0])
            right = _compound(t.children[1])
            if t.children[0].op is not None and t.children[0].op.name == "Union":
                raise ValueError("union has no surface form on a combinator's left")
            return left + joiner + right
        return _compound(t)
    except ValueError:
        return _functional(t)
