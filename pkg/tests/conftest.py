"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from mmsynth.css import lang as css_lang
from mmsynth.css.dom import load_document
from mmsynth.regex import lang as regex_lang

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "mmsynth" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def session_document():
    return load_document(DATA_DIR / "css" / "session_document.json")


# ---------------------------------------------------------------------------
# Regex term strategies

_PRINTABLE = [chr(c) for c in range(0x20, 0x7F)]

chars = st.sampled_from(_PRINTABLE)


@st.composite
def charset_terms(draw, max_depth: int = 2):
    if max_depth == 0:
        choice = draw(st.integers(0, 3))
        if choice == 0:
            return regex_lang.from_char(draw(chars))
        if choice == 1:
            lo, hi = sorted(draw(st.tuples(chars, chars)))
            return regex_lang.char_range(lo, hi)
        if choice == 2:
            return regex_lang.any_char()
        return regex_lang.named_class(draw(st.sampled_from(["d", "s", "w"])))
    choice = draw(st.integers(0, 2))
    if choice == 0:
        return draw(charset_terms(max_depth=0))
    if choice == 1:
        return regex_lang.set_union(
            draw(charset_terms(max_depth=max_depth - 1)),
            draw(charset_terms(max_depth=max_depth - 1)),
        )
    return regex_lang.negate(draw(charset_terms(max_depth=max_depth - 1)))


@st.composite
def regex_terms(draw, max_depth: int = 3):
    if max_depth == 0:
        return regex_lang.from_char_set(draw(charset_terms(max_depth=1)))
    choice = draw(st.integers(0, 4))
    if choice == 0:
        return draw(regex_terms(max_depth=0))
    if choice == 1:
        return regex_lang.alter(
            draw(regex_terms(max_depth=max_depth - 1)),
            draw(regex_terms(max_depth=max_depth - 1)),
        )
    if choice == 2:
        return regex_lang.concat(
            draw(regex_terms(max_depth=max_depth - 1)),
            draw(regex_terms(max_depth=max_depth - 1)),
        )
    if choice == 3:
        lo = draw(st.integers(0, 3))
        hi = draw(st.integers(0, 4))
        return regex_lang.quant(draw(regex_terms(max_depth=max_depth - 1)), lo, hi)
    return regex_lang.quant_min(draw(regex_terms(max_depth=max_depth - 1)), draw(st.integers(0, 3)))


short_texts = st.text(alphabet=st.sampled_from(_PRINTABLE + ["\t", "\n"]), max_size=7)


# ---------------------------------------------------------------------------
# CSS term strategies (closed over the session document's vocabulary)

_TAGS = ["html", "body", "form", "input", "ul", "li", "table", "tr", "td", "div", "span"]
_ATTRS = ["type", "value", "checked", "class", "id"]
_VALUES = ["checkbox", "text", "yes", "no", "true", "name", "list", ""]
_CLASSES = ["a", "b", "c", "ab", "list"]


@st.composite
def index_terms(draw):
    if draw(st.booleans()):
        return css_lang.int_const(draw(st.integers(0, 5)))
    return css_lang.multiple_offset(draw(st.integers(-3, 3)), draw(st.integers(-3, 5)))


@st.composite
def selector_terms(draw, max_depth: int = 3):
    if max_depth == 0:
        return css_lang.any_node()
    choice = draw(st.integers(0, 11))
    sub = selector_terms(max_depth=max_depth - 1)
    if choice == 0:
        return css_lang.any_node()
    if choice == 1:
        return css_lang.union(draw(sub), draw(sub))
    if choice == 2:
        return css_lang.not_in(draw(sub), draw(sub))
    if choice == 3:
        return css_lang.tag_equals(draw(sub), draw(st.sampled_from(_TAGS)))
    if choice == 4:
        return css_lang.nth_child(draw(sub), draw(index_terms()))
    if choice == 5:
        return css_lang.nth_last_child(draw(sub), draw(index_terms()))
    if choice == 6:
        builder = draw(
            st.sampled_from(
                [
                    css_lang.attr_equals,
                    css_lang.attr_contains,
                    css_lang.attr_starts_with,
                    css_lang.attr_ends_with,
                ]
            )
        )
        return builder(
            draw(sub), draw(st.sampled_from(_ATTRS)), draw(st.sampled_from(_VALUES))
        )
    if choice == 7:
        return css_lang.right_sibling(draw(sub), draw(sub))
    if choice == 8:
        return css_lang.children_of(draw(sub), draw(sub))
    if choice == 9:
        return css_lang.descendants_of(draw(sub), draw(sub))
    return css_lang.class_contains(draw(sub), draw(st.sampled_from(_CLASSES)))
