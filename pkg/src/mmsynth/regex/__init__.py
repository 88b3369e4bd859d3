"""Regular-expression DSL: language definition, parser, printer, matcher."""

from .lang import REGEX_DSL  # noqa: F401
from .matcher import charset_intervals, compile_term, interpretation, match_full  # noqa: F401
from .parser import ParseError, parse_regex  # noqa: F401
from .printer import print_regex  # noqa: F401
