"""CSS-selector DSL: document model, language, parser, printer, evaluator."""

from .dom import DocumentFormatError, DomDocument, DomNode, load_document, parse_document  # noqa: F401
from .evaluator import CssSession, evaluate_indices, evaluate_selector  # noqa: F401
from .lang import CSS_DSL  # noqa: F401
from .parser import ParseError, parse_selector  # noqa: F401
from .printer import print_selector  # noqa: F401
