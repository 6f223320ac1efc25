"""Term algebra: exact constants, the term AST, parsing, printing and simplification"""

from .constants import ExactConstant
from .nodes import (
    X_TERM,
    Add,
    Const,
    Exp,
    GermTerm,
    Log,
    Mul,
    Pow,
    Recip,
    TermId,
    X,
    substitute,
    term_id,
    tower_height,
)
from .parser import parse
from .printer import format_term
from .simplify import simplify

__all__ = [
    "Add",
    "Const",
    "ExactConstant",
    "Exp",
    "GermTerm",
    "Log",
    "Mul",
    "Pow",
    "Recip",
    "TermId",
    "X",
    "X_TERM",
    "format_term",
    "parse",
    "simplify",
    "substitute",
    "term_id",
    "tower_height",
]
