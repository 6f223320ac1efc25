"""
Structural simplification of germ terms.

Bottom-up rewriting to a fixpoint. Rules that are only valid for positive
arguments (splitting logarithms, merging fractional powers) fire only when
positivity is evident from the shape of the term.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from .constants import ONE, ZERO, ExactConstant
from .nodes import (
    Add,
    Const,
    Exp,
    GermTerm,
    Log,
    Mul,
    Pow,
    Recip,
    X,
    term_id,
)

logger = logging.getLogger(__name__)

MAX_PASSES = 64


@lru_cache(maxsize=16384)
def simplify(term: GermTerm) -> GermTerm:
    """Return the rewrite normal form of a term"""
    current = term
    for _ in range(MAX_PASSES):
        following = _node(current)
        if following == current:
            return current
        current = following
    logger.debug("simplify did not reach a fixpoint in %d passes", MAX_PASSES)
    return current


@lru_cache(maxsize=65536)
def _node(term: GermTerm) -> GermTerm:
    if isinstance(term, (Const, X)):
        return term
    if isinstance(term, Add):
        return _add([_node(t) for t in term.terms])
    if isinstance(term, Mul):
        return _mul([_node(t) for t in term.factors])
    if isinstance(term, Recip):
        return _recip(_node(term.arg))
    if isinstance(term, Pow):
        return _pow(_node(term.base), term.exponent)
    if isinstance(term, Exp):
        return _exp(_node(term.arg))
    if isinstance(term, Log):
        return _log(_node(term.arg))
    raise TypeError(f"Not a germ term: {term!r}")


# ---------------------------------------------------------------------------
# Sums
# ---------------------------------------------------------------------------


def _add(terms: list[GermTerm]) -> GermTerm:
    flat: list[GermTerm] = []
    for t in terms:
        flat.extend(t.terms if isinstance(t, Add) else (t,))

    constant = ZERO
    collected: dict[GermTerm, ExactConstant] = {}
    for t in flat:
        if isinstance(t, Const):
            constant = constant + t.value
            continue
        coefficient, rest = split_coefficient(t)
        collected[rest] = collected.get(rest, ZERO) + coefficient

    items = [scale(c, rest) for rest, c in collected.items() if not c.is_zero]
    if not constant.is_zero:
        items.append(Const(constant))
    if not items:
        return Const(ZERO)
    if len(items) == 1:
        return items[0]
    return Add(tuple(sorted(items, key=term_id)))


def split_coefficient(term: GermTerm) -> tuple[ExactConstant, GermTerm]:
    """Split c*rest with c the leading constant of a simplified product."""
    if isinstance(term, Mul) and isinstance(term.factors[0], Const):
        rest = term.factors[1:]
        return term.factors[0].value, rest[0] if len(rest) == 1 else Mul(rest)
    return ONE, term


def scale(coefficient: ExactConstant, rest: GermTerm) -> GermTerm:
    if coefficient == ONE:
        return rest
    if isinstance(rest, Mul):
        return Mul((Const(coefficient),) + rest.factors)
    return Mul((Const(coefficient), rest))


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def _mul(factors: list[GermTerm]) -> GermTerm:
    flat: list[GermTerm] = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Mul) else (f,))

    coefficient = ONE
    exponents: dict[GermTerm, Fraction] = {}
    exp_args: list[GermTerm] = []

    def absorb_constant(value: ExactConstant) -> None:
        nonlocal coefficient
        product = coefficient.times(value)
        if product is None:
            base = Const(value)
            exponents[base] = exponents.get(base, Fraction(0)) + 1
        else:
            coefficient = product

    for f in flat:
        if isinstance(f, Const):
            absorb_constant(f.value)
        elif isinstance(f, Exp):
            exp_args.append(f.arg)
        elif isinstance(f, Pow):
            exponents[f.base] = exponents.get(f.base, Fraction(0)) + f.exponent
        elif isinstance(f, Recip):
            exponents[f.arg] = exponents.get(f.arg, Fraction(0)) - 1
        else:
            exponents[f] = exponents.get(f, Fraction(0)) + 1

    if coefficient.is_zero:
        return Const(ZERO)

    items: list[GermTerm] = []
    # constants whose product with the coefficient leaves q + r*pi
    leftover: dict[ExactConstant, int] = {}

    def place(item: GermTerm) -> None:
        nonlocal coefficient
        if isinstance(item, Const):
            product = coefficient.times(item.value)
            if product is None:
                leftover[item.value] = leftover.get(item.value, 0) + 1
            else:
                coefficient = product
        elif isinstance(item, Mul):
            for sub in item.factors:
                place(sub)
        else:
            items.append(item)

    if exp_args:
        combined = exp_args[0] if len(exp_args) == 1 else _add(exp_args)
        summands = combined.terms if isinstance(combined, Add) else (combined,)
        for s in summands:
            place(_exp_single(s))

    for base, e in list(exponents.items()):
        if e != 0:
            place(_pow(base, e))
    for value, n in leftover.items():
        items.append(Const(value) if n == 1 else Pow(Const(value), Fraction(n)))

    if coefficient.is_zero:
        return Const(ZERO)
    items.sort(key=term_id)
    if coefficient != ONE:
        items.insert(0, Const(coefficient))
    if not items:
        return Const(ONE)
    if len(items) == 1:
        return items[0]
    return Mul(tuple(items))


def _recip(arg: GermTerm) -> GermTerm:
    if isinstance(arg, Const):
        inverse = arg.value.reciprocal()
        return Const(inverse) if inverse is not None else Recip(arg)
    if isinstance(arg, Recip):
        return arg.arg
    if isinstance(arg, Mul):
        return _mul([_recip(f) for f in arg.factors])
    if isinstance(arg, Pow):
        return _pow(arg.base, -arg.exponent)
    if isinstance(arg, Exp):
        return _exp(_mul([Const(ExactConstant.of(-1)), arg.arg]))
    return Recip(arg)


def _pow(base: GermTerm, exponent: Fraction) -> GermTerm:
    if exponent == 0:
        return Const(ONE)
    if exponent == 1:
        return base
    integral = exponent.denominator == 1
    if isinstance(base, Const):
        folded = base.value.power(exponent)
        if folded is not None:
            return Const(folded)
    if isinstance(base, Exp):
        return _exp(_mul([Const(ExactConstant(exponent)), base.arg]))
    if isinstance(base, Pow) and (integral or evidently_positive(base.base)):
        return _pow(base.base, base.exponent * exponent)
    if isinstance(base, Recip):
        return _pow(base.arg, -exponent)
    if isinstance(base, Mul) and (
        integral or all(evidently_positive(f) for f in base.factors)
    ):
        return _mul([_pow(f, exponent) for f in base.factors])
    if exponent == -1:
        return Recip(base)
    return Pow(base, exponent)


# ---------------------------------------------------------------------------
# Exponentials and logarithms
# ---------------------------------------------------------------------------


def _exp(arg: GermTerm) -> GermTerm:
    if isinstance(arg, Add):
        return _mul([_exp_single(s) for s in arg.terms])
    return _exp_single(arg)


def _exp_single(arg: GermTerm) -> GermTerm:
    if isinstance(arg, Const) and arg.value.is_zero:
        return Const(ONE)
    if isinstance(arg, Log):
        return arg.arg
    if (
        isinstance(arg, Mul)
        and len(arg.factors) == 2
        and isinstance(arg.factors[0], Const)
        and arg.factors[0].value.is_rational
        and isinstance(arg.factors[1], Log)
    ):
        return _pow(arg.factors[1].arg, arg.factors[0].value.rational_part)
    return Exp(arg)


def _log(arg: GermTerm) -> GermTerm:
    if isinstance(arg, Exp):
        return arg.arg
    if isinstance(arg, Const) and arg.value == ONE:
        return Const(ZERO)
    if isinstance(arg, Mul) and all(evidently_positive(f) for f in arg.factors):
        return _add([_log(f) for f in arg.factors])
    if isinstance(arg, Pow) and evidently_positive(arg.base):
        return _mul([Const(ExactConstant(arg.exponent)), _log(arg.base)])
    if isinstance(arg, Recip) and evidently_positive(arg.arg):
        return _mul([Const(ExactConstant.of(-1)), _log(arg.arg)])
    return Log(arg)


# ---------------------------------------------------------------------------
# Evident positivity
# ---------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def evidently_positive(term: GermTerm) -> bool:
    """Eventual positivity readable from the shape of the term alone"""
    if isinstance(term, Const):
        return term.value.sign() > 0
    if isinstance(term, (X, Exp)):
        return True
    if isinstance(term, Log):
        return evidently_large(term.arg)
    if isinstance(term, (Add, Mul)):
        parts = term.terms if isinstance(term, Add) else term.factors
        return all(evidently_positive(p) for p in parts)
    if isinstance(term, Pow):
        return evidently_positive(term.base)
    if isinstance(term, Recip):
        return evidently_positive(term.arg)
    return False


@lru_cache(maxsize=65536)
def evidently_large(term: GermTerm) -> bool:
    """Tends to +infinity, readable from the shape of the term alone"""
    if isinstance(term, X):
        return True
    if isinstance(term, (Exp, Log)):
        return evidently_large(term.arg)
    if isinstance(term, Pow):
        return term.exponent > 0 and evidently_large(term.base)
    if isinstance(term, Add):
        return all(evidently_positive(t) for t in term.terms) and any(
            evidently_large(t) for t in term.terms
        )
    if isinstance(term, Mul):
        return all(
            evidently_large(f) or (isinstance(f, Const) and f.value.sign() > 0)
            for f in term.factors
        ) and any(evidently_large(f) for f in term.factors)
    return False
