"""Independent oracles used to cross-check the package.

Each oracle is implemented from the documented semantics with a different
algorithm and different primitives than the code under test:

* regex matching goes through Python's ``re`` module (backtracking),
  after an independent set-algebra translation of the term;
* CSS selection is a per-node recursive predicate (the evaluator under
  test is set-denotational);
* Levenshtein is the full O(n*m) matrix (the kernels are two-row / C);
* the toy DSL enumerator is exhaustive bottom-up enumeration.
"""

from __future__ import annotations

import itertools
import re

from mmsynth.css import lang as css_lang
from mmsynth.css.dom import DomDocument, DomNode
from mmsynth.dsl import Constant, DslDefinition, Sort, Term, make_operators
from mmsynth.regex.lang import DEFAULT_ALPHABET

# ---------------------------------------------------------------------------
# Regex oracle: term -> Python re pattern over explicit character sets

ALPHABET_CHARS = frozenset(chr(c) for c in range(DEFAULT_ALPHABET[0], DEFAULT_ALPHABET[1] + 1))

# Named classes per their documented meaning, written out directly.
CLASS_CHARS = {
    "d": frozenset("0123456789"),
    "s": frozenset("\t\n\v\f\r "),
    "w": frozenset("0123456789_" + "abcdefghijklmnopqrstuvwxyz" + "ABCDEFGHIJKLMNOPQRSTUVWXYZ"),
}

_NEVER = r"(?!)"  # a pattern that matches nothing


def charset_chars(t: Term) -> frozenset:
    """The set of characters denoted by a sort-``s`` term."""
    if t.const is not None:
        return CLASS_CHARS[t.const.value[1]]
    name = t.op.name
    if name == "fromChar":
        return frozenset(t.children[0].const.value)
    if name == "range":
        lo, hi = ord(t.children[0].const.value), ord(t.children[1].const.value)
        return frozenset(chr(c) for c in range(lo, hi + 1))
    if name == "union":
        return charset_chars(t.children[0]) | charset_chars(t.children[1])
    if name == "negate":
        return ALPHABET_CHARS - charset_chars(t.children[0])
    if name == "any":
        return ALPHABET_CHARS
    raise ValueError(f"not a set operator: {name}")


def _charset_pattern(chars: frozenset) -> str:
    if not chars:
        return _NEVER
    return "(?:" + "|".join(re.escape(c) for c in sorted(chars)) + ")"


def term_to_pattern(t: Term) -> str:
    """An equivalent Python ``re`` pattern for a regex term."""
    if t.sort.name == "s":
        return _charset_pattern(charset_chars(t))
    name = t.op.name
    if name == "fromCharSet":
        return _charset_pattern(charset_chars(t.children[0]))
    if name == "concat":
        return term_to_pattern(t.children[0]) + term_to_pattern(t.children[1])
    if name == "alter":
        return "(?:" + term_to_pattern(t.children[0]) + "|" + term_to_pattern(t.children[1]) + ")"
    if name == "quant":
        lo = t.children[1].const.value
        hi = t.children[2].const.value
        if lo > hi:
            return _NEVER
        return "(?:" + term_to_pattern(t.children[0]) + ")" + "{%d,%d}" % (lo, hi)
    if name == "quantMin":
        lo = t.children[1].const.value
        return "(?:" + term_to_pattern(t.children[0]) + ")" + "{%d,}" % lo
    raise ValueError(f"not an expression operator: {name}")


def oracle_match(t: Term, s: str) -> bool:
    """Anchored match of a regex term via Python's re module."""
    if t.sort.name in ("i", "c"):
        return False
    return re.fullmatch(term_to_pattern(t), s) is not None


# ---------------------------------------------------------------------------
# CSS oracle: per-node predicate

def _oracle_positions(t: Term, limit: int) -> set:
    """1-based positions denoted by an index term, checked point-wise."""
    if t.const is not None:
        j = t.const.value
        return {j} if 1 <= j <= limit else set()
    i = t.children[0].const.value
    j = t.children[1].const.value
    out = set()
    for k in range(1, limit + 1):
        if i == 0:
            ok = k == j
        elif i > 0:
            ok = (k - j) % i == 0 and k >= j
        else:
            ok = (j - k) % (-i) == 0 and k <= j
        if ok:
            out.add(k)
    return out


def oracle_holds(t: Term, node: DomNode, doc: DomDocument) -> bool:
    """Does the selector term select this node?  Independent recursion."""
    name = t.op.name
    if name == "Any":
        return True
    if name == "Union":
        return oracle_holds(t.children[0], node, doc) or oracle_holds(t.children[1], node, doc)
    if name == "Not":
        return oracle_holds(t.children[0], node, doc) and not oracle_holds(
            t.children[1], node, doc
        )
    if name == "TagEquals":
        return oracle_holds(t.children[0], node, doc) and node.tag == t.children[1].const.value
    if name in ("nthChild", "nthLastChild"):
        if not oracle_holds(t.children[0], node, doc) or node.parent is None:
            return False
        positions = _oracle_positions(t.children[1], doc.max_children)
        if name == "nthChild":
            return node.child_index + 1 in positions
        return len(node.parent.children) - node.child_index in positions
    if name in (
        "AttributeEquals",
        "AttributeContains",
        "AttributeStartsWith",
        "AttributeEndsWith",
    ):
        if not oracle_holds(t.children[0], node, doc):
            return False
        attr = t.children[1].const.value
        value = t.children[2].const.value
        if attr not in node.attrs:
            return False
        got = node.attrs[attr]
        return {
            "AttributeEquals": got == value,
            "AttributeContains": value in got,
            "AttributeStartsWith": got.startswith(value),
            "AttributeEndsWith": got.endswith(value),
        }[name]
    if name == "RightSibling":
        if not oracle_holds(t.children[1], node, doc) or node.parent is None:
            return False
        return any(
            oracle_holds(t.children[0], sib, doc)
            for sib in node.parent.children[: node.child_index]
        )
    if name == "Children":
        return (
            oracle_holds(t.children[1], node, doc)
            and node.parent is not None
            and oracle_holds(t.children[0], node.parent, doc)
        )
    if name == "Descendants":
        if not oracle_holds(t.children[1], node, doc):
            return False
        cur = node.parent
        while cur is not None:
            if oracle_holds(t.children[0], cur, doc):
                return True
            cur = cur.parent
        return False
    if name == "ClassContains":
        return (
            oracle_holds(t.children[0], node, doc)
            and t.children[1].const.value in node.attrs.get("class", "").split()
        )
    raise ValueError(f"not a node operator: {name}")


def oracle_select(t: Term, doc: DomDocument) -> frozenset:
    return frozenset(n for n in doc.nodes if oracle_holds(t, n, doc))


# ---------------------------------------------------------------------------
# Levenshtein oracle: full DP matrix

def oracle_levenshtein(a: str, b: str) -> int:
    m, n = len(a), len(b)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[m][n]


# ---------------------------------------------------------------------------
# Toy DSL: modular arithmetic expressions in one variable

TOY_MOD = 17
TOY_SORT = Sort("v")

TOY_OPERATORS = make_operators(
    [
        ("inc", [TOY_SORT], TOY_SORT),
        ("mul", [TOY_SORT, TOY_SORT], TOY_SORT),
        ("add", [TOY_SORT, TOY_SORT], TOY_SORT),
    ]
)

_TOY_OPS = {op.name: op for op in TOY_OPERATORS}


def toy_const(v) -> Term:
    return Term(const=Constant(v, TOY_SORT))


TOY_VAR = toy_const("x")

TOY_DSL = DslDefinition(
    name="toy",
    sorts=frozenset({TOY_SORT}),
    operators=TOY_OPERATORS,
    closed_sort=TOY_SORT,
    standard_components=(toy_const(0), toy_const(1), toy_const(2), TOY_VAR),
)


def toy_apply(name: str, *args: Term) -> Term:
    return Term(op=_TOY_OPS[name], children=args)


def toy_eval(t: Term, x: int) -> int:
    if t.const is not None:
        return x % TOY_MOD if t.const.value == "x" else t.const.value % TOY_MOD
    vals = [toy_eval(c, x) for c in t.children]
    if t.op.name == "inc":
        return (vals[0] + 1) % TOY_MOD
    if t.op.name == "mul":
        return (vals[0] * vals[1]) % TOY_MOD
    return (vals[0] + vals[1]) % TOY_MOD


def toy_signature(t: Term) -> tuple:
    """The term's full behaviour: its value on every input residue."""
    return tuple(toy_eval(t, x) for x in range(TOY_MOD))


def toy_enumerate(depth: int) -> dict:
    """Exhaustive enumeration: signature -> a smallest witness term.

    ``depth`` counts operator layers above the atoms; depth 0 is the
    atoms alone.
    """
    atoms = list(TOY_DSL.standard_components)
    layers = [list(atoms)]
    witnesses: dict[tuple, Term] = {}
    for t in atoms:
        witnesses.setdefault(toy_signature(t), t)
    pool = list(atoms)
    for _ in range(depth):
        new_layer = []
        for op in TOY_OPERATORS:
            for args in itertools.product(pool, repeat=op.arity):
                t = Term(op=op, children=args)
                sig = toy_signature(t)
                if sig not in witnesses:
                    witnesses[sig] = t
                    new_layer.append(t)
        pool = pool + new_layer
        layers.append(new_layer)
    return witnesses
