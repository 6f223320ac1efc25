"""
Limits, classification and dominance of germs at +infinity.

Everything here reads the leading term of a truncated expansion (see
``expansion``). When the expansion budget runs out, the limit may fall back
on sympy's Gruntz implementation and the sign of a small germ on certified
interval evaluation at x = exp_j(10).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Optional

import sympy

from ..core.config import Budget, get_settings
from ..core.errors import (
    DomainError,
    EvaluationError,
    PositivityError,
    Undecided,
    Undecomposable,
)
from ..terms.constants import ExactConstant
from ..terms.nodes import (
    X_TERM,
    Add,
    Const,
    GermTerm,
    Mul,
    Recip,
    const,
    log_k,
    tower_height,
)
from ..terms.numeric import interval_sign, tower_point
from ..terms.printer import format_term
from ..terms.simplify import simplify
from .bridge import SYMBOL, term_to_sympy
from .expansion import NeedMore, Series, expand_at, query
from .monomials import (
    ONE,
    Coefficient,
    Monomial,
    coefficient_sign,
    compare_monomials,
    pairs_term,
)

if TYPE_CHECKING:
    from .height import EhValue

logger = logging.getLogger(__name__)


class GermClass(str, Enum):
    ZERO = "ZeroGerm"
    INF_INCREASING = "InfIncreasing"
    INF_DECREASING = "InfDecreasing"
    FINITE_POSITIVE = "FinitePositive"
    FINITE_NEGATIVE = "FiniteNegative"
    SMALL_POSITIVE = "SmallPositive"
    SMALL_NEGATIVE = "SmallNegative"

    @property
    def is_positive(self) -> bool:
        return self in POSITIVE_CLASSES


POSITIVE_CLASSES = frozenset(
    {GermClass.INF_INCREASING, GermClass.FINITE_POSITIVE, GermClass.SMALL_POSITIVE}
)


class LimitKind(str, Enum):
    PLUS_INFINITY = "PlusInfinity"
    MINUS_INFINITY = "MinusInfinity"
    ZERO = "Zero"
    FINITE = "FiniteNonzero"


@dataclass(frozen=True)
class LimitValue:
    kind: LimitKind
    sign: int = 0
    enclosure: Optional[tuple[sympy.Float, sympy.Float]] = None
    exact: Optional[ExactConstant] = None
    # exact symbolic value of a finite limit
    value: Optional[sympy.Expr] = field(default=None, compare=False, repr=False)

    @classmethod
    def finite(cls, c: Coefficient) -> "LimitValue":
        c = sympy.sympify(c)
        sign = coefficient_sign(c)
        if sign == 0:
            return cls(LimitKind.ZERO)
        approx = sympy.N(c, 40)
        radius = abs(approx) * sympy.Float("1e-30", 40)
        return cls(
            LimitKind.FINITE,
            sign=sign,
            enclosure=(approx - radius, approx + radius),
            exact=ExactConstant.from_sympy(c),
            value=c,
        )

    @property
    def is_infinite(self) -> bool:
        return self.kind in (LimitKind.PLUS_INFINITY, LimitKind.MINUS_INFINITY)

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind.value}
        if self.kind == LimitKind.FINITE:
            assert self.enclosure is not None
            data["sign"] = self.sign
            data["enclosure"] = [str(self.enclosure[0]), str(self.enclosure[1])]
            data["exact"] = None if self.exact is None else str(self.exact)
        return data


PLUS_INFINITY = LimitValue(LimitKind.PLUS_INFINITY, sign=1)
MINUS_INFINITY = LimitValue(LimitKind.MINUS_INFINITY, sign=-1)
ZERO_LIMIT = LimitValue(LimitKind.ZERO)


class Relation(str, Enum):
    PRECEDES = "≺"
    ASYMPTOTIC = "≍"
    DOMINATES = "≻"


@dataclass(frozen=True)
class Dominance:
    relation: Relation
    ratio: Optional[LimitValue] = None


@dataclass(frozen=True)
class MonomialNF:
    """Normal form of a principal monomial"""

    log_depth: int
    factors: tuple[tuple[GermTerm, Coefficient], ...]
    monomial: Monomial = field(compare=False, repr=False)

    @classmethod
    def from_monomial(cls, m: Monomial) -> "MonomialNF":
        factors: list[tuple[GermTerm, Coefficient]] = [
            (log_k(X_TERM, j), r) for j, r in m.logs
        ]
        if m.exp_arg:
            exp_part = Monomial((), m.exp_arg)
            factors.append((exp_part.term(), sympy.Integer(1)))
        depth = max((j for j, _ in m.logs), default=0)
        return cls(depth, tuple(factors), m)

    def term(self) -> GermTerm:
        return self.monomial.term()

    @property
    def text(self) -> str:
        return format_term(self.term())

    def eh(self) -> "EhValue":
        from .height import EhValue, monomial_eh

        return EhValue.exact(monomial_eh(self.monomial))


@dataclass(frozen=True)
class LeadingTerm:
    coefficient: LimitValue
    monomial: MonomialNF


def _budget(budget: Optional[Budget]) -> Budget:
    return budget or get_settings().budget()


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def _class_of_lead(c: Coefficient, m: Monomial) -> GermClass:
    growth = compare_monomials(m, ONE)
    positive = coefficient_sign(c) > 0
    if growth > 0:
        return GermClass.INF_INCREASING if positive else GermClass.INF_DECREASING
    if growth < 0:
        return GermClass.SMALL_POSITIVE if positive else GermClass.SMALL_NEGATIVE
    return GermClass.FINITE_POSITIVE if positive else GermClass.FINITE_NEGATIVE


def _classify_series(s: Series) -> GermClass:
    if s.is_zero:
        return GermClass.ZERO
    c, m = s.lead()
    return _class_of_lead(c, m)


def classify(f: GermTerm, budget: Optional[Budget] = None) -> GermClass:
    """Class of the germ of f"""
    budget = _budget(budget)
    f = simplify(f)
    if isinstance(f, Const):
        sign = f.value.sign()
        if sign == 0:
            return GermClass.ZERO
        return GermClass.FINITE_POSITIVE if sign > 0 else GermClass.FINITE_NEGATIVE
    try:
        return query(f, _classify_series, budget)
    except Undecided:
        logger.debug("expansion undecided for %s, trying fallbacks", format_term(f))

    small = _known_small(f, budget)
    fallback = None if small else _sympy_limit(f, budget)
    if fallback is not None:
        if fallback.kind == LimitKind.PLUS_INFINITY:
            return GermClass.INF_INCREASING
        if fallback.kind == LimitKind.MINUS_INFINITY:
            return GermClass.INF_DECREASING
        return (
            GermClass.FINITE_POSITIVE
            if fallback.sign > 0
            else GermClass.FINITE_NEGATIVE
        )
    if small:
        sign = numeric_sign(f, budget)
        if sign is not None:
            return GermClass.SMALL_POSITIVE if sign > 0 else GermClass.SMALL_NEGATIVE
    raise Undecided(f"Cannot classify {format_term(f)}")


def _known_small(f: GermTerm, budget: Budget) -> bool:
    try:
        s = expand_at(f, budget.max_expansion_order)
    except NeedMore:
        return False
    return not s.terms and not s.is_exact and s.bounded_by_one()


def numeric_sign(f: GermTerm, budget: Optional[Budget] = None) -> Optional[int]:
    """
    Common sign of f at x = exp_j(10), j = 0..towerheight + extra, if the
    certified enclosures agree on one; None otherwise.
    """
    budget = _budget(budget)
    levels = tower_height(f) + budget.zero_test_extra_levels
    signs = set()
    for j in range(levels + 1):
        point = tower_point(j)
        for bits in budget.precisions():
            try:
                sign = interval_sign(f, point, bits)
            except EvaluationError:
                sign = None
                break
            if sign is not None:
                signs.add(sign)
                break
            logger.debug("zero test at exp_%d(10) unresolved at %d bits", j, bits)
    if len(signs) == 1 and 0 not in signs:
        return signs.pop()
    return None


def _sympy_limit(f: GermTerm, budget: Budget) -> Optional[LimitValue]:
    if not budget.sympy_fallback:
        return None
    try:
        value = sympy.limit(term_to_sympy(f), SYMBOL, sympy.oo)
    except (NotImplementedError, ValueError, TypeError, RecursionError) as e:
        logger.debug("sympy limit failed for %s: %s", format_term(f), e)
        return None
    if value == sympy.oo:
        return PLUS_INFINITY
    if value == -sympy.oo:
        return MINUS_INFINITY
    if value.is_number and value.is_finite and value.is_real:
        try:
            result = LimitValue.finite(value)
        except Undecided:
            return None
        if result.kind == LimitKind.FINITE:
            return result
    return None


# ---------------------------------------------------------------------------
# Limits and dominance
# ---------------------------------------------------------------------------


def _limit_of_series(s: Series) -> LimitValue:
    if s.is_zero:
        return ZERO_LIMIT
    if not s.terms:
        if s.bounded_by_one():
            return ZERO_LIMIT
        raise NeedMore("no leading term")
    c, m = s.lead()
    growth = compare_monomials(m, ONE)
    if growth > 0:
        return PLUS_INFINITY if coefficient_sign(c) > 0 else MINUS_INFINITY
    if growth < 0:
        return ZERO_LIMIT
    return LimitValue.finite(c)


def limit(f: GermTerm, budget: Optional[Budget] = None) -> LimitValue:
    """Limit of f at +infinity"""
    budget = _budget(budget)
    f = simplify(f)
    if isinstance(f, Const):
        return LimitValue.finite(f.value.to_sympy())
    try:
        return query(f, _limit_of_series, budget)
    except Undecided:
        fallback = _sympy_limit(f, budget)
        if fallback is None:
            raise
        logger.debug("limit of %s taken from sympy", format_term(f))
        return fallback


def require_positive(f: GermTerm, budget: Optional[Budget] = None) -> GermClass:
    cls = classify(f, budget)
    if not cls.is_positive:
        raise PositivityError(
            f"{format_term(f)} is not eventually positive", germ_class=cls.value
        )
    return cls


def compare(f: GermTerm, g: GermTerm, budget: Optional[Budget] = None) -> Dominance:
    """Dominance of two eventually positive germs"""
    require_positive(f, budget)
    require_positive(g, budget)
    ratio = limit(Mul((f, Recip(g))), budget)
    if ratio.kind == LimitKind.ZERO:
        return Dominance(Relation.PRECEDES)
    if ratio.is_infinite:
        return Dominance(Relation.DOMINATES)
    return Dominance(Relation.ASYMPTOTIC, ratio)


def eventually_leq(f: GermTerm, g: GermTerm, budget: Optional[Budget] = None) -> bool:
    """f <= g eventually, decided through the class of g - f"""
    cls = classify(Add((g, Mul((const(-1), f)))), budget)
    return cls == GermClass.ZERO or cls.is_positive


# ---------------------------------------------------------------------------
# Leading monomial and the purely infinite / bounded split
# ---------------------------------------------------------------------------


def lm(f: GermTerm, budget: Optional[Budget] = None) -> LeadingTerm:
    """Leading coefficient and principal monomial of f"""

    def ask(s: Series) -> tuple[Coefficient, Monomial]:
        if s.is_zero:
            raise DomainError("The zero germ has no leading monomial")
        return s.lead()

    c, m = query(simplify(f), ask, _budget(budget))
    return LeadingTerm(LimitValue.finite(c), MonomialNF.from_monomial(m))


def decompose_ub(
    f: GermTerm, budget: Optional[Budget] = None
) -> tuple[GermTerm, GermTerm]:
    """Split f into a purely infinite part and a bounded part"""
    f = simplify(f)

    def ask(s: Series) -> Series:
        if not s.bounded_by_one():
            raise NeedMore("remainder may hide large terms")
        return s

    try:
        s = query(f, ask, _budget(budget))
    except Undecided as e:
        raise Undecomposable(
            f"Cannot separate the large part of {format_term(f)}"
        ) from e

    large = s.large_terms()
    if not large:
        return const(0), f
    purely_infinite = simplify(pairs_term(large))
    if s.is_exact:
        rest = [(c, m) for c, m in s.terms if compare_monomials(m, ONE) <= 0]
        bounded = simplify(pairs_term(rest))
    else:
        bounded = simplify(Add((f, Mul((const(-1), purely_infinite)))))
    return purely_infinite, bounded
