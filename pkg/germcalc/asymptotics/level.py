"""
Level and angular level of positive germs.

level(f) for f tending to infinity peels one exponential while log(f)
outgrows every power of log(x), and one logarithm (by composing with exp)
while it is dominated by every such power:

    log f / log x -> +inf   =>  level(f) = level(log f) + 1
    log f / log x -> 0      =>  level(f) = level(f o exp) - 1
    otherwise                   level(f) = 0

Germs tending to a positive constant have level -inf; small germs share the
level of their reciprocal.
"""

from __future__ import annotations

import logging
from typing import Optional, Union

from ..core.config import Budget, get_settings
from ..core.errors import DepthExceeded, PositivityError
from ..terms.nodes import (
    X_TERM,
    Exp,
    GermTerm,
    Log,
    Mul,
    Recip,
    substitute,
    tower_height,
)
from ..terms.printer import format_term
from ..terms.simplify import simplify
from .limits import GermClass, LimitKind, classify, limit, require_positive

logger = logging.getLogger(__name__)

NEG_INF = float("-inf")

Level = Union[int, float]

_LOG_X = Log(X_TERM)
_EXP_X = Exp(X_TERM)

def level(f: GermTerm, budget: Optional[Budget] = None) -> Level:
    """Level of an eventually positive germ; -inf for germs tending to a constant"""
    budget = budget or get_settings().budget()
    f = simplify(f)
    guard = 2 * tower_height(f) + budget.guard_slack
    return _level(f, budget, 0, guard, {})


def _level(
    f: GermTerm, budget: Budget, depth: int, guard: int, memo: dict[GermTerm, Level]
) -> Level:
    if f in memo:
        return memo[f]
    if depth > guard:
        raise DepthExceeded(
            f"level recursion exceeded depth {guard} at {format_term(f)}", guard=guard
        )

    cls = classify(f, budget)
    if cls == GermClass.FINITE_POSITIVE:
        result: Level = NEG_INF
    elif cls == GermClass.SMALL_POSITIVE:
        result = _level(simplify(Recip(f)), budget, depth, guard, memo)
    elif cls == GermClass.INF_INCREASING:
        ratio = limit(Mul((Log(f), Recip(_LOG_X))), budget)
        if ratio.kind == LimitKind.PLUS_INFINITY:
            result = _level(simplify(Log(f)), budget, depth + 1, guard, memo) + 1
        elif ratio.kind == LimitKind.ZERO:
            composed = simplify(substitute(f, _EXP_X))
            result = _level(composed, budget, depth + 1, guard, memo) - 1
        else:
            result = 0
    else:
        raise PositivityError(
            f"level needs an eventually positive germ, got {cls.value}",
            germ_class=cls.value,
        )
    memo[f] = result
    return result


def alevel(f: GermTerm, budget: Optional[Budget] = None) -> int:
    """
    Angular level of a positive germ: with g = f/log, max(-1, level(g) + 1)
    when g is small and positive, else -1.
    """
    require_positive(f, budget)
    g = simplify(Mul((f, Recip(_LOG_X))))
    if classify(g, budget) != GermClass.SMALL_POSITIVE:
        return -1
    return int(max(-1, level(g, budget) + 1))


def inverse_level(level_f: int) -> int:
    """Level of the compositional inverse of a germ of level level_f"""
    return -level_f
