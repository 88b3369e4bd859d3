"""Generic DSL machinery: sorts, operators, constants and immutable terms.

Everything downstream (parsers, the synthesis engine, the matchers) works
with the types defined here.  A DSL is a finite signature; a Term is an
immutable applicative tree over that signature.  Terms are structurally
hashed at construction so they can live in large sets cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "Sort",
    "Operator",
    "Constant",
    "DslDefinition",
    "Term",
    "subterms",
    "is_atomic",
    "op_vector",
    "count_containing",
    "average_op_vector",
]


@dataclass(frozen=True)
class Sort:
    """A named sort; identity is by name."""

    name: str

    def __repr__(self) -> str:
        return f"Sort({self.name!r})"


@dataclass(frozen=True)
class Operator:
    """An operator with a fixed argument/return signature.

    ``index`` is the operator's stable position in operator vectors; it is
    assigned in DSL declaration order and never changes afterwards.
    """

    name: str
    arg_sorts: tuple[Sort, ...]
    ret_sort: Sort
    index: int

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    def __repr__(self) -> str:
        return f"Operator({self.name!r})"


@dataclass(frozen=True)
class Constant:
    """A domain literal of a fixed sort.

    ``value`` may be any hashable payload (a character, an integer, a
    string, or a symbolic marker such as a named character class).
    """

    value: Any
    ret_sort: Sort
    name: Optional[str] = None

    def __repr__(self) -> str:
        label = self.name if self.name is not None else repr(self.value)
        return f"Constant({label})"


class Term:
    """Immutable AST node: either a constant leaf or an operator application.

    Structural equality and hashing; the hash is computed once at
    construction.  ``size`` counts all nodes (constants included).
    """

    __slots__ = ("op", "const", "children", "size", "_hash")

    op: Optional[Operator]
    const: Optional[Constant]
    children: tuple["Term", ...]
    size: int

    def __init__(
        self,
        op: Optional[Operator] = None,
        const: Optional[Constant] = None,
        children: Sequence["Term"] = (),
    ):
        if (op is None) == (const is None):
            raise ValueError("a term is either an operator application or a constant")
        children = tuple(children)
        if op is not None:
            if len(children) != op.arity:
                raise ValueError(
                    f"operator {op.name} expects {op.arity} arguments, got {len(children)}"
                )
            for child, expected in zip(children, op.arg_sorts):
                if child.sort != expected:
                    raise ValueError(
                        f"argument of {op.name} has sort {child.sort.name}, "
                        f"expected {expected.name}"
                    )
        elif children:
            raise ValueError("constant terms have no children")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "size", 1 + sum(c.size for c in children))
        head = op if op is not None else const
        object.__setattr__(self, "_hash", hash((head, children)))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Term is immutable")

    @property
    def sort(self) -> Sort:
        return self.op.ret_sort if self.op is not None else self.const.ret_sort

    @property
    def is_constant(self) -> bool:
        return self.const is not None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.op == other.op
            and self.const == other.const
            and self.children == other.children
        )

    def __repr__(self) -> str:
        if self.const is not None:
            return repr(self.const)
        args = ", ".join(repr(c) for c in self.children)
        return f"{self.op.name}({args})"

    def walk(self) -> Iterator["Term"]:
        """Yield every node of the tree (pre-order, duplicates included)."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)


@dataclass(frozen=True)
class DslDefinition:
    """A DSL signature plus its closed sort and standard components.

    Operator indices follow declaration order in ``operators``; operator
    vectors are comparable only between terms of the same definition.
    """

    name: str
    sorts: frozenset[Sort]
    operators: tuple[Operator, ...]
    closed_sort: Sort
    standard_components: tuple[Term, ...] = ()
    _by_name: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.closed_sort not in self.sorts:
            raise ValueError("closed sort must be one of the DSL sorts")
        for i, op in enumerate(self.operators):
            if op.index != i:
                raise ValueError(f"operator {op.name} has index {op.index}, expected {i}")
            if op.ret_sort not in self.sorts or any(s not in self.sorts for s in op.arg_sorts):
                raise ValueError(f"operator {op.name} uses sorts outside the DSL")
        self._by_name.update({op.name: op for op in self.operators})
        if len(self._by_name) != len(self.operators):
            raise ValueError("operator names must be unique")

    def operator(self, name: str) -> Operator:
        return self._by_name[name]

    @property
    def n_operators(self) -> int:
        return len(self.operators)


def make_operators(specs: Iterable[tuple[str, Sequence[Sort], Sort]]) -> tuple[Operator, ...]:
    """Build an operator tuple from (name, arg_sorts, ret_sort) triples."""
    return tuple(
        Operator(name, tuple(args), ret, index=i) for i, (name, args, ret) in enumerate(specs)
    )


# ---------------------------------------------------------------------------
# Structural operations

_SUBTERM_CACHE: dict[Term, frozenset] = {}


def subterms(t: Term) -> frozenset:
    """The reflexive-transitive set of sub-terms of ``t`` (t included)."""
    cached = _SUBTERM_CACHE.get(t)
    if cached is not None:
        return cached
    acc = {t}
    for child in t.children:
        acc |= subterms(child)
    result = frozenset(acc)
    _SUBTERM_CACHE[t] = result
    return result


def is_atomic(t: Term) -> bool:
    """True iff ``t`` has no sub-term other than itself."""
    return len(t.children) == 0


def op_vector(t: Term, dsl: DslDefinition) -> np.ndarray:
    """Occurrence counts of each DSL operator in ``t`` (constants ignored)."""
    counts = np.zeros(dsl.n_operators, dtype=np.float64)
    for node in t.walk():
        if node.op is not None:
            counts[node.op.index] += 1
    return counts


def count_containing(t: Term, programs: Sequence[Term]) -> int:
    """Number of programs that contain ``t`` as a sub-term (set-style count)."""
    return sum(1 for p in programs if t in subterms(p))


def average_op_vector(programs: Sequence[Term], dsl: DslDefinition) -> np.ndarray:
    """Componentwise mean of the programs' operator vectors."""
    if not programs:
        raise ValueError("no candidates")
    total = np.zeros(dsl.n_operators, dtype=np.float64)
    for p in programs:
        total += op_vector(p, dsl)
    return total / len(programs)
