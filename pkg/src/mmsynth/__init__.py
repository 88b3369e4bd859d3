"""Multi-modal program synthesis: language-model candidates + guided
component-based enumerative search, for regular expressions and CSS
selectors."""

from .dsl import Constant, DslDefinition, Operator, Sort, Term  # noqa: F401
from .engine import (  # noqa: F401
    Cache,
    Domain,
    MultiModalTask,
    SynthesisConfig,
    SynthesisResult,
    synthesize,
)

__version__ = "0.1.0"
