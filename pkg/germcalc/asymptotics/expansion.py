"""
Truncated asymptotic expansions.

A Series is a finite sum of coefficient/monomial pairs in strictly
decreasing order plus an optional remainder bound: the germ equals the sum
plus O(bound). Every operation keeps at most ``order`` terms. When a query
needs information the truncation threw away (the leading term of a series
that is all remainder, or the constant part of an exponent), NeedMore is
raised and the driver retries with a larger order.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, TypeVar

import sympy

from ..core.config import Budget, get_settings
from ..core.errors import DomainError, Undecided
from ..terms.nodes import Add, Const, Exp, GermTerm, Log, Mul, Pow, Recip, X
from ..terms.printer import format_term
from .monomials import (
    ONE,
    Coefficient,
    Monomial,
    coefficient_sign,
    combine,
    compare_monomials,
    exp_monomial,
    is_zero_coefficient,
    log_monomial,
    max_monomial,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


class NeedMore(Exception):
    """The current expansion order cannot answer the query"""


@dataclass(frozen=True)
class Series:
    terms: tuple[tuple[Coefficient, Monomial], ...] = ()
    bound: Optional[Monomial] = None

    @property
    def is_exact(self) -> bool:
        return self.bound is None

    @property
    def is_zero(self) -> bool:
        """Exactly the zero germ"""
        return self.bound is None and not self.terms

    def lead(self) -> tuple[Coefficient, Monomial]:
        if not self.terms:
            raise NeedMore("no known leading term")
        return self.terms[0]

    def size(self) -> Optional[Monomial]:
        """Dominant monomial of the series including its remainder"""
        if self.terms:
            return self.terms[0][1]
        return self.bound

    def large_terms(self) -> list[tuple[Coefficient, Monomial]]:
        return [(c, m) for c, m in self.terms if compare_monomials(m, ONE) > 0]

    def bounded_by_one(self) -> bool:
        """The remainder is known to be small"""
        return self.bound is None or compare_monomials(self.bound, ONE) < 0


ZERO_SERIES = Series()


def constant_series(c: Coefficient) -> Series:
    return ZERO_SERIES if is_zero_coefficient(c) else Series(((sympy.sympify(c), ONE),))


def normalize(
    pairs: Iterable[tuple[Coefficient, Monomial]], bound: Optional[Monomial], order: int
) -> Series:
    collected: dict[Monomial, Coefficient] = {}
    for c, m in pairs:
        if bound is not None and compare_monomials(m, bound) <= 0:
            continue
        collected[m] = combine(collected.get(m, 0), c)
    items = [(c, m) for m, c in collected.items() if not is_zero_coefficient(c)]
    items.sort(key=functools.cmp_to_key(lambda a, b: compare_monomials(b[1], a[1])))
    if len(items) > order:
        bound = items[order][1]
        items = items[:order]
    return Series(tuple(items), bound)


def _max_bound(*bounds: Optional[Monomial]) -> Optional[Monomial]:
    return max_monomial(b for b in bounds if b is not None)


def add(a: Series, b: Series, order: int) -> Series:
    return normalize(a.terms + b.terms, _max_bound(a.bound, b.bound), order)


def scale(s: Series, c: Coefficient) -> Series:
    if is_zero_coefficient(c):
        return ZERO_SERIES
    return Series(tuple((sympy.expand(c * ci), m) for ci, m in s.terms), s.bound)


def shift(s: Series, m: Monomial) -> Series:
    """Multiply by a monomial"""
    return Series(
        tuple((c, mi * m) for c, mi in s.terms),
        None if s.bound is None else s.bound * m,
    )


def mul(a: Series, b: Series, order: int) -> Series:
    if a.is_zero or b.is_zero:
        return ZERO_SERIES
    pairs = [(ca * cb, ma * mb) for ca, ma in a.terms for cb, mb in b.terms]
    candidates = []
    size_a, size_b = a.size(), b.size()
    if a.bound is not None and size_b is not None:
        candidates.append(a.bound * size_b)
    if b.bound is not None and size_a is not None:
        candidates.append(b.bound * size_a)
    return normalize(pairs, _max_bound(*candidates), order)


def compose(
    coefficients: list[Coefficient], eps: Series, order: int, terminating: bool
) -> Series:
    """sum of coefficients[k] * eps**k for a small series eps"""
    result = constant_series(coefficients[0])
    power = constant_series(1)
    for c in coefficients[1:]:
        power = mul(power, eps, order)
        if power.is_zero:
            return result
        if not is_zero_coefficient(c):
            result = add(result, scale(power, c), order)
    if not terminating and not eps.is_zero:
        size = eps.size()
        assert size is not None
        remainder = size ** sympy.Integer(len(coefficients))
        result = add(result, Series((), remainder), order)
    return result


def unit_split(s: Series) -> tuple[Coefficient, Monomial, Series]:
    """s = c * m * (1 + eps) with eps small"""
    c, m = s.lead()
    inverse = m.inverse()
    rest = tuple((ci / c, mi * inverse) for ci, mi in s.terms[1:])
    bound = None if s.bound is None else s.bound * inverse
    return c, m, Series(rest, bound)


# ---------------------------------------------------------------------------
# Node rules
# ---------------------------------------------------------------------------


def reciprocal(s: Series, order: int) -> Series:
    if s.is_zero:
        raise DomainError("Division by the zero germ")
    c, m, eps = unit_split(s)
    geometric = [sympy.Integer((-1) ** k) for k in range(order + 1)]
    unit = compose(geometric, eps, order, terminating=False)
    return scale(shift(unit, m.inverse()), 1 / c)


def power(s: Series, r: Fraction, order: int) -> Series:
    if r == 0:
        return constant_series(1)
    if s.is_zero:
        if r > 0:
            return ZERO_SERIES
        raise DomainError("Negative power of the zero germ")
    c, m, eps = unit_split(s)
    exponent = sympy.Rational(r.numerator, r.denominator)
    if r.denominator != 1 and coefficient_sign(c) < 0:
        raise DomainError("Fractional power of an eventually negative germ")
    terminating = r.denominator == 1 and r > 0
    count = int(r) + 1 if terminating else order + 1
    binomials = [sympy.binomial(exponent, k) for k in range(count)]
    unit = compose(binomials, eps, order, terminating)
    return scale(shift(unit, m ** exponent), sympy.expand(c**exponent))


def exponential(s: Series, order: int) -> Series:
    if not s.bounded_by_one():
        raise NeedMore("constant part of the exponent is unknown")
    large = s.large_terms()
    constant = sympy.Integer(0)
    small = []
    for c, m in s.terms:
        if m.is_one:
            constant = c
        elif compare_monomials(m, ONE) < 0:
            small.append((c, m))
    eps = Series(tuple(small), s.bound)
    factorials = [1 / sympy.factorial(k) for k in range(order + 1)]
    unit = compose(factorials, eps, order, terminating=False)
    return scale(shift(unit, exp_monomial(large)), sympy.exp(constant))


def logarithm(s: Series, order: int) -> Series:
    if s.is_zero:
        raise DomainError("Logarithm of the zero germ")
    c, m, eps = unit_split(s)
    if coefficient_sign(c) <= 0:
        raise DomainError("Logarithm of an eventually nonpositive germ")
    pairs = [(sympy.log(c), ONE)] + m.log_terms()
    head = normalize(pairs, None, order)
    mercator = [sympy.Integer(0)] + [
        sympy.Rational((-1) ** (k + 1), k) for k in range(1, order + 1)
    ]
    return add(head, compose(mercator, eps, order, terminating=False), order)


@functools.lru_cache(maxsize=16384)
def expand_at(term: GermTerm, order: int) -> Series:
    """Expansion of a term keeping at most ``order`` terms per series"""
    if isinstance(term, Const):
        return constant_series(term.value.to_sympy())
    if isinstance(term, X):
        return Series(((sympy.Integer(1), log_monomial(0)),))
    if isinstance(term, Add):
        result = ZERO_SERIES
        for t in term.terms:
            result = add(result, expand_at(t, order), order)
        return result
    if isinstance(term, Mul):
        result = constant_series(1)
        for f in term.factors:
            result = mul(result, expand_at(f, order), order)
            if result.is_zero:
                break
        return result
    if isinstance(term, Recip):
        return reciprocal(expand_at(term.arg, order), order)
    if isinstance(term, Pow):
        return power(expand_at(term.base, order), term.exponent, order)
    if isinstance(term, Exp):
        return exponential(expand_at(term.arg, order), order)
    if isinstance(term, Log):
        return logarithm(expand_at(term.arg, order), order)
    raise TypeError(f"Not a germ term: {term!r}")


def query(
    term: GermTerm, ask: Callable[[Series], T], budget: Optional[Budget] = None
) -> T:
    """
    Answer ``ask`` on the expansion of a term, doubling the order until the
    answer no longer needs discarded information.
    """
    budget = budget or get_settings().budget()
    for order in budget.orders():
        try:
            return ask(expand_at(term, order))
        except NeedMore as e:
            logger.debug(
                "order %d insufficient for %s: %s", order, format_term(term), e
            )
    raise Undecided(
        f"Expansion budget exhausted for {format_term(term)}",
        max_order=budget.max_expansion_order,
    )
