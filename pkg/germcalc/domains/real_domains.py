"""
Real domains on the Riemann surface of the logarithm.

A real domain U_h = {x : |x| > a, |arg x| < h(|x|)} is keyed by an
eventually positive bound h; only the germ of h at +infinity matters, the
radius a is carried as metadata. Domains are classified by the angular
level of their bound, and the nu-maps transform bounds under the
maps x -> r*x, x -> x^r and log.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import sympy

from ..asymptotics.level import alevel
from ..asymptotics.limits import (
    GermClass,
    LimitKind,
    classify,
    eventually_leq,
    limit,
    require_positive,
)
from ..asymptotics.monomials import coefficient_sign
from ..core.config import Budget, get_settings
from ..core.errors import (
    DomainError,
    EvaluationError,
    NotInfinitelyIncreasing,
    NotStandardDomain,
    PrecisionExhausted,
    Undecided,
)
from ..terms.constants import ExactConstant
from ..terms.nodes import (
    X_TERM,
    Add,
    Const,
    GermTerm,
    Log,
    Mul,
    Pow,
    Recip,
    add,
    const,
    sub,
    substitute,
)
from ..terms.numeric import evaluate_real, real_context
from ..terms.printer import format_term
from ..terms.simplify import simplify

logger = logging.getLogger(__name__)

HALF_PI = Const(ExactConstant.pi(Fraction(1, 2)))


@dataclass(frozen=True)
class DomainSpec:
    """U_h for an eventually positive bound h"""

    bound: GermTerm
    base_radius: float = 0.0

    def __post_init__(self) -> None:
        if self.base_radius < 0:
            raise ValueError("base_radius must be nonnegative")

    def to_dict(self) -> dict[str, Any]:
        return {"bound": format_term(self.bound), "base_radius": self.base_radius}


@dataclass(frozen=True)
class DomainClass:
    k: int
    witnesses: Optional[tuple[GermTerm, GermTerm]] = None

    def to_dict(self) -> dict[str, Any]:
        witnesses = None
        if self.witnesses is not None:
            witnesses = [format_term(w) for w in self.witnesses]
        return {"k": self.k, "witnesses": witnesses}


@dataclass(frozen=True)
class NuLogTemplate:
    """Class and asymptotic shape of nu_log(h); u is an unknown unit at infinity"""

    germ_class: int
    quotient: GermTerm

    @property
    def asymptotic_form(self) -> str:
        return f"({format_term(self.quotient)})∘exp(x·u)"


def _budget(budget: Optional[Budget]) -> Budget:
    return budget or get_settings().budget()


# ---------------------------------------------------------------------------
# Classes
# ---------------------------------------------------------------------------


def domain_class(spec: DomainSpec, budget: Optional[Budget] = None) -> DomainClass:
    """k = alevel(h), witnessed by h itself"""
    h = spec.bound
    return DomainClass(alevel(h, budget), (h, h))


def domain_class_from_witnesses(
    g1: GermTerm, g2: GermTerm, budget: Optional[Budget] = None
) -> DomainClass:
    """Class of a domain squeezed between U_g1 and U_g2"""
    require_positive(g1, budget)
    require_positive(g2, budget)
    if not eventually_leq(g1, g2, budget):
        raise DomainError(
            f"lower witness {format_term(g1)} is not eventually below {format_term(g2)}"
        )
    k1, k2 = alevel(g1, budget), alevel(g2, budget)
    if k1 != k2:
        raise DomainError(
            f"witnesses have angular levels {k1} and {k2}", lower=k1, upper=k2
        )
    return DomainClass(k1, (g1, g2))


def angle_bounded(h: GermTerm, budget: Optional[Budget] = None) -> bool:
    cls = require_positive(h, budget)
    return cls != GermClass.INF_INCREASING


# ---------------------------------------------------------------------------
# nu-maps
# ---------------------------------------------------------------------------


def nu_mr(h: GermTerm, r: Fraction) -> GermTerm:
    """Bound of r*U_h: h o (x/r)"""
    r = _positive(r)
    return simplify(substitute(h, Mul((Const(ExactConstant(1 / r)), X_TERM))))


def nu_pr(h: GermTerm, r: Fraction) -> GermTerm:
    """Bound of the image of U_h under x -> x^r: r * h(x^(1/r))"""
    r = _positive(r)
    scaled = substitute(h, Pow(X_TERM, 1 / r))
    return simplify(Mul((Const(ExactConstant(r)), scaled)))


def nu_log_class(h: GermTerm, budget: Optional[Budget] = None) -> NuLogTemplate:
    """Angular level of nu_log(h), with the template (h/log) o exp(x*u)"""
    k = alevel(h, budget)
    quotient = simplify(Mul((h, Recip(Log(X_TERM)))))
    return NuLogTemplate(k + 1, quotient)


def nu_exp_class(h: GermTerm, budget: Optional[Budget] = None) -> int:
    """Angular level of nu_exp(h) for a standard domain U_h"""
    standard = is_standard(h, budget)
    if standard is None:
        raise Undecided(f"cannot decide whether U_{format_term(h)} is standard")
    if not standard:
        raise NotStandardDomain(f"U_{format_term(h)} is not a standard domain")
    return max(-1, alevel(h, budget) - 1)


def _positive(r: Fraction) -> Fraction:
    r = Fraction(r)
    if r <= 0:
        raise DomainError(f"scaling factor {r} is not positive")
    return r


# ---------------------------------------------------------------------------
# Standard domains
# ---------------------------------------------------------------------------


def is_standard(h: GermTerm, budget: Optional[Budget] = None) -> Optional[bool]:
    """
    Whether U_h is a standard domain.

    A bound with limit below pi/2 gives a standard domain and one with limit
    above pi/2 (or infinite) does not. At exactly pi/2 the bound must
    approach pi/2 from below, and x*cos(h(x)) must grow monotonically on a
    decade grid; None when that test is inconclusive.
    """
    budget = _budget(budget)
    require_positive(h, budget)
    value = limit(h, budget)
    if value.is_infinite:
        return False
    if value.kind == LimitKind.ZERO:
        return True
    assert value.value is not None
    side = coefficient_sign(sympy.expand(value.value - sympy.pi / 2))
    if side != 0:
        return side < 0
    gap = classify(Add((h, Mul((const(-1), HALF_PI)))), budget)
    if gap != GermClass.SMALL_NEGATIVE:
        return False
    return _grows_on_grid(h, budget)


def _grows_on_grid(h: GermTerm, budget: Budget) -> Optional[bool]:
    for bits in budget.precisions():
        ctx = real_context(bits)
        try:
            values = [
                ctx.mpf(10**k) * ctx.cos(evaluate_real(h, 10**k, bits))
                for k in range(1, budget.standard_grid_size + 1)
            ]
        except (PrecisionExhausted, EvaluationError) as e:
            logger.debug("growth test of %s at %d bits: %s", format_term(h), bits, e)
            continue
        if values[0] > 0 and all(b > a for a, b in zip(values, values[1:])):
            return True
        return None
    return None


# ---------------------------------------------------------------------------
# Translations
# ---------------------------------------------------------------------------


def translate_sandwich(
    h: GermTerm, eps: Fraction, budget: Optional[Budget] = None
) -> tuple[GermTerm, GermTerm]:
    """Bounds (h o (x - eps), h o (x + eps)) enclosing the translate of U_h"""
    eps = _positive(eps)
    cls = classify(h, budget)
    if cls != GermClass.INF_INCREASING:
        raise NotInfinitelyIncreasing(
            f"{format_term(h)} is {cls.value}, not infinitely increasing"
        )
    shift = Const(ExactConstant(eps))
    lower = substitute(h, sub(X_TERM, shift))
    upper = substitute(h, add(X_TERM, shift))
    return lower, upper
