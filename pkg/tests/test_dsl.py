"""Core term/DSL machinery."""

import numpy as np
import pytest

from mmsynth.dsl import (
    Constant,
    DslDefinition,
    Operator,
    Sort,
    Term,
    average_op_vector,
    count_containing,
    is_atomic,
    op_vector,
    subterms,
)
from mmsynth.regex import lang as rl

from oracles import TOY_DSL, TOY_VAR, toy_apply, toy_const


def test_term_is_immutable():
    t = rl.int_const(3)
    with pytest.raises(AttributeError):
        t.size = 5


def test_term_requires_exactly_one_head():
    with pytest.raises(ValueError):
        Term()
    with pytest.raises(ValueError):
        Term(op=rl.OPERATORS[0], const=Constant(1, Sort("i")))


def test_term_checks_arity_and_sorts():
    with pytest.raises(ValueError):
        Term(op=rl.REGEX_DSL.operator("fromChar"), children=())
    with pytest.raises(ValueError):
        # fromChar expects a character, not an integer
        Term(op=rl.REGEX_DSL.operator("fromChar"), children=(rl.int_const(1),))
    with pytest.raises(ValueError):
        Term(const=Constant(1, Sort("i")), children=(rl.int_const(1),))


def test_structural_equality_and_hash():
    a = rl.concat(rl.from_char_set(rl.from_char("a")), rl.from_char_set(rl.from_char("b")))
    b = rl.concat(rl.from_char_set(rl.from_char("a")), rl.from_char_set(rl.from_char("b")))
    c = rl.concat(rl.from_char_set(rl.from_char("b")), rl.from_char_set(rl.from_char("a")))
    assert a == b and hash(a) == hash(b)
    assert a != c
    assert len({a, b, c}) == 2


def test_size_counts_all_nodes():
    # concat(fromCharSet(fromChar('a')), fromCharSet(fromChar('b'))):
    # 1 concat + 2 fromCharSet + 2 fromChar + 2 char constants = 7
    t = rl.concat(rl.from_char_set(rl.from_char("a")), rl.from_char_set(rl.from_char("b")))
    assert t.size == 7
    assert rl.int_const(0).size == 1


def test_subterms_reflexive_and_complete():
    t = rl.alter(rl.from_char_set(rl.from_char("a")), rl.from_char_set(rl.from_char("a")))
    subs = subterms(t)
    assert t in subs
    # shared sub-trees appear once: alter, fromCharSet, fromChar, 'a'
    assert len(subs) == 4
    assert is_atomic(rl.int_const(1))
    assert not is_atomic(t)


def test_op_vector_indices_follow_declaration_order():
    t = rl.alter(rl.from_char_set(rl.from_char("a")), rl.quant_min(rl.from_char_set(rl.any_char()), 1))
    v = op_vector(t, rl.REGEX_DSL)
    expected = np.zeros(10)
    expected[rl.REGEX_DSL.operator("fromChar").index] = 1
    expected[rl.REGEX_DSL.operator("any").index] = 1
    expected[rl.REGEX_DSL.operator("quantMin").index] = 1
    expected[rl.REGEX_DSL.operator("alter").index] = 1
    expected[rl.REGEX_DSL.operator("fromCharSet").index] = 2
    assert np.array_equal(v, expected)


def test_op_vector_counts_repeated_operators():
    t = toy_apply("add", toy_apply("inc", TOY_VAR), toy_apply("inc", toy_const(1)))
    assert np.array_equal(op_vector(t, TOY_DSL), np.array([2.0, 0.0, 1.0]))


def test_count_containing_is_set_style():
    # x occurs twice inside p but p counts once
    p = toy_apply("add", TOY_VAR, TOY_VAR)
    q = toy_apply("inc", toy_const(1))
    assert count_containing(TOY_VAR, [p, q]) == 1
    assert count_containing(p, [p, q]) == 1
    assert count_containing(toy_const(1), [p, q]) == 1


def test_average_op_vector():
    p = toy_apply("add", TOY_VAR, TOY_VAR)  # add=1
    q = toy_apply("inc", toy_apply("inc", TOY_VAR))  # inc=2
    avg = average_op_vector([p, q], TOY_DSL)
    assert np.allclose(avg, [1.0, 0.0, 0.5])
    with pytest.raises(ValueError):
        average_op_vector([], TOY_DSL)


def test_dsl_definition_validates():
    s = Sort("v")
    bad = (Operator("f", (s,), s, index=1),)  # wrong index
    with pytest.raises(ValueError):
        DslDefinition(name="bad", sorts=frozenset({s}), operators=bad, closed_sort=s)
    with pytest.raises(ValueError):
        DslDefinition(name="bad", sorts=frozenset({s}), operators=(), closed_sort=Sort("w"))


def test_operator_lookup():
    assert rl.REGEX_DSL.operator("concat").arity == 2
    assert rl.REGEX_DSL.n_operators == 10
