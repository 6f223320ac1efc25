"""Independent numeric asymptotics for cross-checking the symbolic engine"""

from .corpus import TermGenerator, default_corpus_path, generate_terms, load_corpus
from .numeric import (
    CONFIRMED,
    WEAK,
    OracleEstimate,
    level_grid,
    numeric_compare,
    numeric_level,
    numeric_limit,
)

__all__ = [
    "CONFIRMED",
    "WEAK",
    "OracleEstimate",
    "TermGenerator",
    "default_corpus_path",
    "generate_terms",
    "level_grid",
    "load_corpus",
    "numeric_compare",
    "numeric_level",
    "numeric_limit",
]
