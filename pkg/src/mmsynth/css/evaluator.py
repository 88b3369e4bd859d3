"""Set-denotational evaluation of CSS selector terms over a document.

``evaluate_selector`` returns the exact node-set denotation of a closed
(sort ``n``) term.  Index terms (sort ``i``) denote sets of 1-based
positions, truncated to the document's maximum child-list length;
``MultipleOffset(i, j)`` denotes ``{j, i+j, 2i+j, …}`` (a singleton for
``i = 0``, a finite descending set intersected with the positive naturals
for ``i < 0``).
"""

from __future__ import annotations

from typing import FrozenSet, Optional

from ..dsl import Term
from .dom import DomDocument, DomNode
from .lang import SORT_I, SORT_N, SORT_S

__all__ = ["evaluate_selector", "evaluate_indices", "CssSession"]


def evaluate_indices(t: Term, limit: int) -> frozenset:
    """Positions (1-based, ≤ limit) denoted by a sort-``i`` term."""
    if t.sort != SORT_I:
        raise ValueError(f"expected an index term, got sort {t.sort.name}")
    if t.const is not None:
        k = t.const.value
        return frozenset({k}) if 1 <= k <= limit else frozenset()
    step = t.children[0]
    offset = t.children[1]
    if step.const is None or offset.const is None:
        raise ValueError("MultipleOffset arguments must be integer constants")
    i, j = step.const.value, offset.const.value
    if i == 0:
        return frozenset({j}) if 1 <= j <= limit else frozenset()
    out = set()
    k = j
    if i > 0:
        while k < 1:
            k += i
        while k <= limit:
            out.add(k)
            k += i
    else:
        while k >= 1:
            if k <= limit:
                out.add(k)
            k += i
    return frozenset(out)


def _string_value(t: Term) -> str:
    if t.const is None or not isinstance(t.const.value, str):
        raise ValueError("expected a string literal")
    return t.const.value


def evaluate_selector(
    t: Term, doc: DomDocument, _memo: Optional[dict] = None
) -> FrozenSet[DomNode]:
    """The set of document nodes selected by a sort-``n`` term."""
    if t.sort != SORT_N:
        raise ValueError(f"expected a node-set term, got sort {t.sort.name}")
    memo = _memo if _memo is not None else {}
    cached = memo.get(t)
    if cached is not None:
        return cached

    def ev(sub: Term) -> FrozenSet[DomNode]:
        return evaluate_selector(sub, doc, memo)

    name = t.op.name
    if name == "Any":
        result = frozenset(doc.nodes)
    elif name == "Union":
        result = ev(t.children[0]) | ev(t.children[1])
    elif name == "Not":
        result = ev(t.children[0]) - ev(t.children[1])
    elif name == "TagEquals":
        tag = _string_value(t.children[1])
        result = frozenset(x for x in ev(t.children[0]) if x.tag == tag)
    elif name in ("nthChild", "nthLastChild"):
        positions = evaluate_indices(t.children[1], doc.max_children)
        base = ev(t.children[0])
        if name == "nthChild":
            result = frozenset(
                x for x in base if x.parent is not None and x.child_index + 1 in positions
            )
        else:
            result = frozenset(
                x
                for x in base
                if x.parent is not None
                and len(x.parent.children) - x.child_index in positions
            )
    elif name in (
        "AttributeEquals",
        "AttributeContains",
        "AttributeStartsWith",
        "AttributeEndsWith",
    ):
        attr = _string_value(t.children[1])
        value = _string_value(t.children[2])
        tests = {
            "AttributeEquals": lambda got: got == value,
            "AttributeContains": lambda got: value in got,
            "AttributeStartsWith": lambda got: got.startswith(value),
            "AttributeEndsWith": lambda got: got.endswith(value),
        }
        test = tests[name]
        result = frozenset(
            x for x in ev(t.children[0]) if attr in x.attrs and test(x.attrs[attr])
        )
    elif name == "RightSibling":
        left = ev(t.children[0])
        result = frozenset(
            x
            for x in ev(t.children[1])
            if x.parent is not None
            and any(sib in left for sib in x.parent.children[: x.child_index])
        )
    elif name == "Children":
        parents = ev(t.children[0])
        result = frozenset(x for x in ev(t.children[1]) if x.parent in parents)
    elif name == "Descendants":
        ancestors = ev(t.children[0])

        def has_ancestor(x: DomNode) -> bool:
            cur = x.parent
            while cur is not None:
                if cur in ancestors:
                    return True
                cur = cur.parent
            return False

        result = frozenset(x for x in ev(t.children[1]) if has_ancestor(x))
    elif name == "ClassContains":
        token = _string_value(t.children[1])
        result = frozenset(x for x in ev(t.children[0]) if token in x.class_tokens())
    else:  # pragma: no cover - exhaustive over n-sort operators
        raise ValueError(f"cannot evaluate operator {name}")
    memo[t] = result
    return result


class CssSession:
    """A document plus a persistent evaluation memo, shared across terms."""

    def __init__(self, doc: DomDocument):
        self.doc = doc
        self._memo: dict = {}

    def evaluate(self, t: Term) -> FrozenSet[DomNode]:
        return evaluate_selector(t, self.doc, self._memo)

    def interpretation(self, t: Term, inputs) -> tuple:
        """Membership of each input node in the term's denotation."""
        if t.sort == SORT_N:
            selected = self.evaluate(t)
            return tuple(node in selected for node in inputs)
        if t.sort == SORT_S:
            return ("str", t.const.value if t.const is not None else None)
        return ("idx", tuple(sorted(evaluate_indices(t, max(1, self.doc.max_children)))))
