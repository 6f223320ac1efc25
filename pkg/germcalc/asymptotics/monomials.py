"""
Monomials of the exp-log fragment.

A monomial is a finite product

    l_0^r_0 * l_1^r_1 * ... * exp(E)

of powers of the iterated logarithms l_j = log_j(x) and one exponential of a
finite sum E of large monomials with constant coefficients. Terms c*l_k with
k >= 1 inside E are folded into the power of l_(k-1), which makes the
representation canonical: two monomials are asymptotically equivalent only
when they are equal.

Monomials are compared through the leading term of log(a/b); the nesting
depth of the exponential part drops with every recursive comparison.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import sympy

from ..core.config import get_settings
from ..core.errors import Undecided
from ..terms.nodes import X_TERM, Add, Exp, GermTerm, Log, Mul, Pow, const, log_k, mul
from ..terms.printer import format_term
from ..terms.simplify import simplify
from .bridge import sympy_to_term

logger = logging.getLogger(__name__)

Coefficient = sympy.Expr

_DIGITS_PER_BIT = 0.30103


# ---------------------------------------------------------------------------
# Constant coefficients
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=65536)
def coefficient_sign(c: Coefficient) -> int:
    """
    Sign of an exact real constant.

    Symbolic facts first, then log expansion and simplification, then
    numeric evaluation at escalating precision. A constant that stays
    indistinguishable from zero raises Undecided.
    """
    c = sympy.sympify(c)
    if c.is_zero:
        return 0
    if c.is_positive:
        return 1
    if c.is_negative:
        return -1

    reduced = sympy.simplify(sympy.expand_log(c, force=True))
    if reduced.is_zero:
        return 0
    if reduced.is_positive:
        return 1
    if reduced.is_negative:
        return -1

    for bits in get_settings().budget().precisions():
        digits = int(bits * _DIGITS_PER_BIT)
        value = sympy.N(c, digits)
        if abs(value) > sympy.Float(10, digits) ** (-(digits // 2)):
            return 1 if value > 0 else -1
        logger.debug("constant %s unresolved at %d bits", c, bits)
    raise Undecided(f"Cannot decide the sign of the constant {c}")


def is_zero_coefficient(c: Coefficient) -> bool:
    return coefficient_sign(c) == 0


def combine(c1: Coefficient, c2: Coefficient) -> Coefficient:
    return sympy.expand(c1 + c2)


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    logs: tuple[tuple[int, Coefficient], ...] = ()
    exp_arg: tuple[tuple[Coefficient, "Monomial"], ...] = ()

    @property
    def is_one(self) -> bool:
        return not self.logs and not self.exp_arg

    def __mul__(self, other: "Monomial") -> "Monomial":
        return _product(self, other)

    def __pow__(self, r: Coefficient) -> "Monomial":
        r = sympy.sympify(r)
        if r == 0:
            return ONE
        return make_monomial(
            {j: e * r for j, e in self.logs}, [(c * r, m) for c, m in self.exp_arg]
        )

    def inverse(self) -> "Monomial":
        return self ** sympy.Integer(-1)

    def log_terms(self) -> list[tuple[Coefficient, "Monomial"]]:
        """log of the monomial as coefficient/monomial pairs (a finite sum)"""
        pairs = [(r, log_monomial(j + 1)) for j, r in self.logs]
        return pairs + list(self.exp_arg)

    def term(self) -> GermTerm:
        factors: list[GermTerm] = []
        for j, r in self.logs:
            tower = log_k(X_TERM, j)
            if r == 1:
                factors.append(tower)
            elif isinstance(r, sympy.Rational):
                factors.append(Pow(tower, Fraction(int(r.p), int(r.q))))
            else:
                factors.append(Exp(Mul((sympy_to_term(r), Log(tower)))))
        if self.exp_arg:
            factors.append(Exp(simplify(pairs_term(self.exp_arg))))
        if not factors:
            return const(1)
        return mul(*factors)

    def __str__(self) -> str:
        return format_term(self.term())

    def __lt__(self, other: "Monomial") -> bool:
        return compare_monomials(self, other) < 0


ONE = Monomial()


def log_monomial(j: int, exponent: Coefficient = sympy.Integer(1)) -> Monomial:
    """l_j raised to a power"""
    return Monomial(((j, sympy.sympify(exponent)),))


def exp_monomial(pairs: Iterable[tuple[Coefficient, Monomial]]) -> Monomial:
    """exp of a finite sum of large monomials"""
    return make_monomial({}, list(pairs))


def pairs_term(pairs: Iterable[tuple[Coefficient, Monomial]]) -> GermTerm:
    summands: list[GermTerm] = []
    for c, m in pairs:
        if m.is_one:
            summands.append(sympy_to_term(c))
        elif c == 1:
            summands.append(m.term())
        else:
            summands.append(Mul((sympy_to_term(c), m.term())))
    if not summands:
        return const(0)
    return summands[0] if len(summands) == 1 else Add(tuple(summands))


def make_monomial(
    logs: dict[int, Coefficient], exp_pairs: list[tuple[Coefficient, Monomial]]
) -> Monomial:
    """Canonical monomial from log exponents and exponential summands"""
    powers = {j: sympy.sympify(e) for j, e in logs.items()}
    collected: dict[Monomial, Coefficient] = {}
    for c, m in exp_pairs:
        absorbed = _pure_log(m)
        if absorbed is not None and absorbed >= 1:
            powers[absorbed - 1] = combine(powers.get(absorbed - 1, 0), c)
            continue
        collected[m] = combine(collected.get(m, 0), c)

    log_part = tuple(
        sorted((j, e) for j, e in powers.items() if not is_zero_coefficient(e))
    )
    exp_part = [(c, m) for m, c in collected.items() if not is_zero_coefficient(c)]
    exp_part.sort(key=functools.cmp_to_key(lambda a, b: compare_monomials(b[1], a[1])))
    return Monomial(log_part, tuple(exp_part))


def _pure_log(m: Monomial) -> Optional[int]:
    """k when m is exactly l_k, else None"""
    if m.exp_arg or len(m.logs) != 1:
        return None
    j, e = m.logs[0]
    return j if e == 1 else None


@functools.lru_cache(maxsize=65536)
def _product(a: Monomial, b: Monomial) -> Monomial:
    if a.is_one:
        return b
    if b.is_one:
        return a
    logs: dict[int, Coefficient] = dict(a.logs)
    for j, e in b.logs:
        logs[j] = combine(logs.get(j, 0), e)
    return make_monomial(logs, list(a.exp_arg) + list(b.exp_arg))


@functools.lru_cache(maxsize=65536)
def compare_monomials(a: Monomial, b: Monomial) -> int:
    """1 if a dominates b, -1 if b dominates a, 0 if equal"""
    if a == b:
        return 0
    return growth_sign(a * b.inverse())


def growth_sign(m: Monomial) -> int:
    """1 if m tends to infinity, -1 if to zero, 0 for the monomial 1"""
    candidates = m.log_terms()
    if not candidates:
        return 0
    lead = candidates[0]
    for candidate in candidates[1:]:
        if compare_monomials(candidate[1], lead[1]) > 0:
            lead = candidate
    return coefficient_sign(lead[0])


def max_monomial(monomials: Iterable[Monomial]) -> Optional[Monomial]:
    best: Optional[Monomial] = None
    for m in monomials:
        if best is None or compare_monomials(m, best) > 0:
            best = m
    return best
