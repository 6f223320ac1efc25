"""
Symbolic asymptotics of exp-log germs: limits, dominance, leading monomials,
level, exponential height and angular level.
"""

from .height import (
    ContinuationProfile,
    EhValue,
    composition_inverse_bound,
    continuation_profile,
    eh,
    eh_components,
    inverse_eh_bound,
    inverse_is_simple,
    is_simple,
    monomial_eh,
)
from .level import NEG_INF, alevel, inverse_level, level
from .limits import (
    Dominance,
    GermClass,
    LeadingTerm,
    LimitKind,
    LimitValue,
    MonomialNF,
    Relation,
    classify,
    compare,
    decompose_ub,
    eventually_leq,
    limit,
    lm,
    require_positive,
)

__all__ = [
    "NEG_INF",
    "ContinuationProfile",
    "Dominance",
    "EhValue",
    "GermClass",
    "LeadingTerm",
    "LimitKind",
    "LimitValue",
    "MonomialNF",
    "Relation",
    "alevel",
    "classify",
    "compare",
    "composition_inverse_bound",
    "continuation_profile",
    "decompose_ub",
    "eh",
    "eh_components",
    "eventually_leq",
    "inverse_eh_bound",
    "inverse_is_simple",
    "inverse_level",
    "is_simple",
    "level",
    "limit",
    "lm",
    "monomial_eh",
    "require_positive",
]
