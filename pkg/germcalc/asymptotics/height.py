"""
Exponential height.

eh is computed by structural recursion:

- constants have height -inf and x has height 0; reciprocals keep it;
- a^r is read as exp(r log a);
- log(a) with a = c*m*(1 + eps) has the height of log(m) or of eps,
  whichever is larger, where log(m) is a finite combination of iterated
  logarithms and exponents of the monomial m;
- exp(a) keeps the height of a when a is bounded; for large a it is
  eh(a) + 1 when level(a) = eh(a) and eh(a) otherwise;
- sums and products take a unique maximal child height; ties are settled
  on the expansion, and when the expansion is truncated the result is a
  certified range.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional

from ..core.config import Budget, get_settings
from ..core.errors import (
    DepthExceeded,
    DomainError,
    NotInfinitelyIncreasing,
    Undecided,
    Undecomposable,
)
from ..terms.constants import ExactConstant
from ..terms.nodes import (
    Add,
    Const,
    Exp,
    GermTerm,
    Log,
    Mul,
    Pow,
    Recip,
    X,
    children,
)
from ..terms.printer import format_term
from ..terms.simplify import simplify
from .expansion import NeedMore, Series, expand_at, query, unit_split
from .level import NEG_INF, Level, level
from .limits import GermClass, classify, require_positive
from .monomials import Monomial, max_monomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EhValue:
    """Exact height (lo == hi) or a certified range lo < hi"""

    lo: Level
    hi: Level

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty height range [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Level) -> "EhValue":
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Level:
        if not self.is_exact:
            raise Undecided(f"exponential height is only known to lie in {self}")
        return self.lo

    def join(self, other: "EhValue") -> "EhValue":
        """Height range of the larger of two heights"""
        return EhValue(max(self.lo, other.lo), max(self.hi, other.hi))

    def to_dict(self) -> dict[str, Any]:
        if self.is_exact:
            return {"exact": level_json(self.lo)}
        return {"range": [level_json(self.lo), level_json(self.hi)]}

    def __str__(self) -> str:
        if self.is_exact:
            return str(level_json(self.lo))
        return f"[{level_json(self.lo)}, {level_json(self.hi)}]"


NEG_INF_EH = EhValue.exact(NEG_INF)


def level_json(value: Level) -> Any:
    """-inf as the string "-inf", integers unchanged"""
    return "-inf" if value == NEG_INF else int(value)


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16384)
def monomial_eh(m: Monomial) -> Level:
    """
    Height of a monomial.

    Pure products of iterated logarithms have height max(-j); otherwise
    m = exp(L) with L = log m a finite sum of large monomials.
    """
    if m.is_one:
        return NEG_INF
    if not m.exp_arg:
        return max(-j for j, _ in m.logs)
    pairs = m.log_terms()
    height = max(monomial_eh(n) for _, n in pairs)
    lead = max_monomial(n for _, n in pairs)
    assert lead is not None
    return height + 1 if level(lead.term()) == height else height


def _series_height(s: Series) -> Level:
    return max((monomial_eh(m) for _, m in s.terms), default=NEG_INF)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


def _effective_height(term: GermTerm) -> int:
    inner = max((_effective_height(c) for c in children(term)), default=0)
    if isinstance(term, (Exp, Log)):
        return inner + 1
    if isinstance(term, Pow):
        return inner + 2
    return inner


class _HeightComputation:
    def __init__(self, budget: Budget, guard: int):
        self.budget = budget
        self.guard = guard
        self.memo: dict[GermTerm, EhValue] = {}

    def eh(self, term: GermTerm, depth: int) -> EhValue:
        cached = self.memo.get(term)
        if cached is not None:
            return cached
        if depth > self.guard:
            raise DepthExceeded(
                f"eh recursion exceeded depth {self.guard} at {format_term(term)}",
                guard=self.guard,
            )
        result = self._compute(term, depth)
        self.memo[term] = result
        return result

    def _compute(self, term: GermTerm, depth: int) -> EhValue:
        if isinstance(term, Const):
            return NEG_INF_EH
        if isinstance(term, X):
            return EhValue.exact(0)
        if isinstance(term, Recip):
            return self.eh(term.arg, depth)
        if isinstance(term, Pow):
            return self._power(term, depth)
        if isinstance(term, Exp):
            return self._exponential(term.arg, depth)
        if isinstance(term, Log):
            return self._logarithm(term.arg, depth)
        parts = term.terms if isinstance(term, Add) else term.factors
        return self._combination(term, [self.eh(p, depth) for p in parts])

    def _power(self, term: Pow, depth: int) -> EhValue:
        base = term.base
        cls = classify(base, self.budget)
        if cls == GermClass.ZERO:
            return NEG_INF_EH
        if not cls.is_positive:
            if term.exponent.denominator != 1:
                raise DomainError(
                    f"fractional power of {format_term(base)}, which is not positive"
                )
            base = simplify(Mul((Const(ExactConstant.of(-1)), base)))
        scaled = Mul((Const(ExactConstant(Fraction(term.exponent))), Log(base)))
        return self._exponential(scaled, depth)

    def _exponential(self, argument: GermTerm, depth: int) -> EhValue:
        inner = self.eh(argument, depth + 1)
        cls = classify(argument, self.budget)
        if cls not in (GermClass.INF_INCREASING, GermClass.INF_DECREASING):
            return inner
        magnitude = argument
        if cls == GermClass.INF_DECREASING:
            magnitude = simplify(Mul((Const(ExactConstant.of(-1)), argument)))
        lvl = level(magnitude, self.budget)
        if inner.is_exact:
            e = inner.lo
            return EhValue.exact(e + 1 if lvl == e else e)
        lo = lvl + 1 if lvl >= inner.lo else inner.lo
        hi = inner.hi + 1 if lvl == inner.hi else inner.hi
        return EhValue(lo, hi)

    def _logarithm(self, argument: GermTerm, depth: int) -> EhValue:
        inner = self.eh(argument, depth + 1)

        def split(s: Series) -> tuple[Monomial, Series]:
            _, m, eps = unit_split(s)
            return m, eps

        m, eps = query(argument, split, self.budget)
        log_m = EhValue.exact(
            max((monomial_eh(n) for _, n in m.log_terms()), default=NEG_INF)
        )
        height_m = monomial_eh(m)
        if height_m < inner.lo:
            unit = inner
        elif eps.is_exact:
            unit = EhValue.exact(_series_height(eps))
        else:
            known = _series_height(eps)
            top = max(inner.hi, height_m)
            unit = EhValue(min(known, top), top)
        return log_m.join(unit)

    def _combination(self, term: GermTerm, values: list[EhValue]) -> EhValue:
        ranked = sorted(range(len(values)), key=lambda i: values[i].lo, reverse=True)
        top = values[ranked[0]]
        rest_hi = max((values[i].hi for i in ranked[1:]), default=NEG_INF)
        if top.lo > rest_hi:
            return top
        hi = max(v.hi for v in values)
        last: Optional[Series] = None
        for order in self.budget.orders():
            try:
                s = expand_at(term, order)
            except NeedMore:
                continue
            if s.is_exact:
                return EhValue.exact(_series_height(s))
            last = s
        lo = NEG_INF if last is None else _series_height(last)
        logger.debug("eh of %s left as a range", format_term(term))
        return EhValue(min(lo, hi), hi)


def eh(f: GermTerm, budget: Optional[Budget] = None) -> EhValue:
    """Exponential height of the germ of f"""
    budget = budget or get_settings().budget()
    f = simplify(f)
    guard = 2 * _effective_height(f) + budget.guard_slack
    return _HeightComputation(budget, guard).eh(f, 0)


def eh_components(
    f: GermTerm, budget: Optional[Budget] = None
) -> dict[Level, GermTerm]:
    """Group the summands of f by their exact exponential height"""
    f = simplify(f)
    summands = f.terms if isinstance(f, Add) else (f,)
    groups: dict[Level, list[GermTerm]] = {}
    for s in summands:
        value = eh(s, budget)
        if not value.is_exact:
            raise Undecomposable(
                f"summand {format_term(s)} has exponential height range {value}"
            )
        groups.setdefault(value.lo, []).append(s)
    return {
        k: simplify(Add(tuple(v))) if len(v) > 1 else v[0]
        for k, v in sorted(groups.items())
    }


def is_simple(f: GermTerm, budget: Optional[Budget] = None) -> Optional[bool]:
    """eh(f) == level(f); None when an eh range contains the level"""
    require_positive(f, budget)
    height = eh(f, budget)
    lvl = level(f, budget)
    if height.is_exact:
        return height.lo == lvl
    if lvl < height.lo or lvl > height.hi:
        return False
    return None


# ---------------------------------------------------------------------------
# Inverses and continuation
# ---------------------------------------------------------------------------


def inverse_eh_bound(eh_g: int, eh_f: int, level_f: int) -> int:
    """Upper bound on eh(g o f^-1)"""
    return max(eh_g + eh_f - 2 * level_f, eh_f - level_f)


def _require_increasing(f: GermTerm, budget: Optional[Budget]) -> None:
    cls = classify(f, budget)
    if cls != GermClass.INF_INCREASING:
        raise NotInfinitelyIncreasing(
            f"{format_term(f)} is {cls.value}, not infinitely increasing"
        )


@dataclass(frozen=True)
class ContinuationProfile:
    eh: int
    level: int
    eta: int
    source_class: int
    image_class: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "eh": self.eh,
            "level": self.level,
            "eta": self.eta,
            "lambda": self.level,
            "source_class": self.source_class,
            "image_class": self.image_class,
            "maps": (
                f"k-domains to (k - {self.level})-domains for k >= {self.source_class}"
            ),
        }


def continuation_profile(
    f: GermTerm, budget: Optional[Budget] = None
) -> ContinuationProfile:
    """Domain classes of the predicted continuation of an infinitely increasing f"""
    _require_increasing(f, budget)
    height = int(eh(f, budget).value)
    lvl = int(level(f, budget))
    eta = max(0, height)
    return ContinuationProfile(height, lvl, eta, eta - 1, eta - 1 - lvl)


def inverse_is_simple(g: GermTerm, budget: Optional[Budget] = None) -> Optional[bool]:
    """True when g is simple with eh(g) <= 0, so its inverse is simple too"""
    _require_increasing(g, budget)
    height = eh(g, budget)
    if is_simple(g, budget) and height.is_exact and height.lo <= 0:
        return True
    return None


def composition_inverse_bound(
    g: GermTerm, f: GermTerm, budget: Optional[Budget] = None
) -> int:
    """inverse_eh_bound evaluated on the computed heights and level"""
    _require_increasing(f, budget)
    eh_g = eh(g, budget).value
    if eh_g == NEG_INF:
        eh_g = 0
    return inverse_eh_bound(
        int(eh_g), int(eh(f, budget).value), int(level(f, budget))
    )
