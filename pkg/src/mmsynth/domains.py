"""Domain adapters wiring the regex and CSS languages into the engine.

Interpretation keys drive both semantic-class grouping and the
sub-term-equivalence filter, so they must be semantically faithful per
sort:

* closed-sort terms use their output vector on the example inputs
  (observational equivalence, exactly what consistency compares);
* regex character-set terms use their interval denotation — judging them
  by example strings would collapse every set (multi-character strings
  are rejected by all of them) and prune away composite character
  classes;
* integer/character/string literals use their value.
"""

from __future__ import annotations

from .css import lang as css_lang
from .css.evaluator import CssSession
from .css.parser import parse_selector
from .css.printer import print_selector
from .engine import Domain
from .regex import lang as regex_lang
from .regex.matcher import charset_intervals, interpretation as regex_outputs
from .regex.parser import parse_regex
from .regex.printer import print_regex

__all__ = ["make_regex_domain", "make_css_domain"]


def make_regex_domain() -> Domain:
    def interpret(t, inputs):
        if t.sort == regex_lang.SORT_E:
            return regex_outputs(t, inputs)
        if t.sort == regex_lang.SORT_S:
            return ("set", charset_intervals(t))
        return ("const", t.const.value if t.const is not None else None)

    return Domain(
        name="regex",
        dsl=regex_lang.REGEX_DSL,
        parse=parse_regex,
        to_string=print_regex,
        interpretation=interpret,
        commutative_ops=frozenset({"alter", "union"}),
    )


def make_css_domain(session: CssSession) -> Domain:
    """CSS domain bound to one session document (examples are its nodes)."""
    return Domain(
        name="css",
        dsl=css_lang.CSS_DSL,
        parse=parse_selector,
        to_string=print_selector,
        interpretation=session.interpretation,
        commutative_ops=frozenset({"Union"}),
    )
