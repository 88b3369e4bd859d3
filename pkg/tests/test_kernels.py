"""Kernel backends: Levenshtein and the flat-program span matcher.

The pure-Python kernels are checked against independent oracles; when the
compiled backend is present, both backends are additionally checked
against each other on the same inputs.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmsynth import kernels
from mmsynth.kernels import _pykernels
from mmsynth.regex.matcher import compile_term
from mmsynth.regex.parser import parse_regex

from conftest import regex_terms, short_texts
from oracles import oracle_levenshtein, oracle_match

try:
    from mmsynth.kernels import _speedups
except ImportError:  # pragma: no cover - compiled backend missing
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None, reason="compiled kernels not built")


# ---------------------------------------------------------------------------
# Levenshtein

def test_levenshtein_known_values():
    assert kernels.levenshtein("kitten", "sitting") == 3
    assert kernels.levenshtein("", "abc") == 3
    assert kernels.levenshtein("abc", "") == 3
    assert kernels.levenshtein("same", "same") == 0
    assert kernels.levenshtein("flaw", "lawn") == 2


@given(st.text(max_size=12), st.text(max_size=12))
def test_python_levenshtein_matches_dp_oracle(a, b):
    assert _pykernels.levenshtein(a, b) == oracle_levenshtein(a, b)


@needs_compiled
@given(st.text(max_size=12), st.text(max_size=12))
def test_compiled_levenshtein_matches_python(a, b):
    assert _speedups.levenshtein(a, b) == _pykernels.levenshtein(a, b)


# ---------------------------------------------------------------------------
# Span matcher

def _run(backend_match, term, text):
    program = compile_term(term)
    codes = np.fromiter((ord(c) for c in text), dtype=np.int32, count=len(text))
    return bool(
        backend_match(
            program.kind,
            program.a1,
            program.a2,
            program.a3,
            program.iv_off,
            program.iv_len,
            program.iv_lo,
            program.iv_hi,
            program.nullable,
            program.root,
            codes,
        )
    )


@settings(max_examples=300, deadline=None)
@given(regex_terms(max_depth=2), short_texts)
def test_python_matcher_agrees_with_re_oracle(term, text):
    assert _run(_pykernels.match_program, term, text) == oracle_match(term, text)


@needs_compiled
@settings(max_examples=300, deadline=None)
@given(regex_terms(max_depth=2), short_texts)
def test_compiled_matcher_agrees_with_python(term, text):
    assert _run(_speedups.match_program, term, text) == _run(
        _pykernels.match_program, term, text
    )


def test_dispatch_uses_python_fallback_for_long_texts():
    # [0-9]+ on a 100-digit string: beyond the compiled 63-char limit.
    term = parse_regex("[0-9]+")
    program = compile_term(term)
    assert program.matches("1" * 100)
    assert not program.matches("1" * 100 + "x")


@needs_compiled
def test_compiled_backend_is_selected_when_built():
    assert kernels.BACKEND == "cython"
    assert _speedups.MAX_TEXT_LEN == 63


def test_empty_text_matches_nullable_programs():
    assert _run(_pykernels.match_program, parse_regex("a*"), "")
    assert not _run(_pykernels.match_program, parse_regex("a+"), "")
