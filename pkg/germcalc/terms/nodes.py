"""
Term AST for exp-log germs at +infinity.

Terms are immutable frozen dataclasses; composition is eliminated at
construction time by ``substitute``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NewType, Union

from .constants import ExactConstant, Rational

TermId = NewType("TermId", str)


@dataclass(frozen=True)
class Const:
    value: ExactConstant


@dataclass(frozen=True)
class X:
    pass


@dataclass(frozen=True)
class Add:
    terms: tuple["GermTerm", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("Add needs at least one summand")


@dataclass(frozen=True)
class Mul:
    factors: tuple["GermTerm", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("Mul needs at least one factor")


@dataclass(frozen=True)
class Recip:
    arg: "GermTerm"


@dataclass(frozen=True)
class Pow:
    base: "GermTerm"
    exponent: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Exp:
    arg: "GermTerm"


@dataclass(frozen=True)
class Log:
    arg: "GermTerm"


GermTerm = Union[Const, X, Add, Mul, Recip, Pow, Exp, Log]


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def const(value: Rational = 0, pi: Rational = 0) -> Const:
    return Const(ExactConstant(Fraction(value), Fraction(pi)))


def add(*terms: GermTerm) -> GermTerm:
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


def mul(*factors: GermTerm) -> GermTerm:
    return factors[0] if len(factors) == 1 else Mul(tuple(factors))


def neg(term: GermTerm) -> Mul:
    return Mul((const(-1), term))


def sub(left: GermTerm, right: GermTerm) -> Add:
    return Add((left, neg(right)))


def power(base: GermTerm, exponent: Rational) -> Pow:
    return Pow(base, Fraction(exponent))


def exp_k(term: GermTerm, k: int) -> GermTerm:
    for _ in range(k):
        term = Exp(term)
    return term


def log_k(term: GermTerm, k: int) -> GermTerm:
    for _ in range(k):
        term = Log(term)
    return term


X_TERM = X()


def children(term: GermTerm) -> tuple[GermTerm, ...]:
    if isinstance(term, Add):
        return term.terms
    if isinstance(term, Mul):
        return term.factors
    if isinstance(term, (Recip, Exp, Log)):
        return (term.arg,)
    if isinstance(term, Pow):
        return (term.base,)
    return ()


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def substitute(f: GermTerm, g: GermTerm) -> GermTerm:
    """Replace every occurrence of x in f by g (the composition f o g)."""
    if isinstance(f, X):
        return g
    if isinstance(f, Const):
        return f
    if isinstance(f, Add):
        return Add(tuple(substitute(t, g) for t in f.terms))
    if isinstance(f, Mul):
        return Mul(tuple(substitute(t, g) for t in f.factors))
    if isinstance(f, Recip):
        return Recip(substitute(f.arg, g))
    if isinstance(f, Pow):
        return Pow(substitute(f.base, g), f.exponent)
    if isinstance(f, Exp):
        return Exp(substitute(f.arg, g))
    if isinstance(f, Log):
        return Log(substitute(f.arg, g))
    raise TypeError(f"Not a germ term: {f!r}")


@lru_cache(maxsize=65536)
def tower_height(term: GermTerm) -> int:
    """Maximal nesting depth of Exp/Log nodes"""
    inner = max((tower_height(c) for c in children(term)), default=0)
    return inner + 1 if isinstance(term, (Exp, Log)) else inner


# Const < x < Log < Pow < Recip < Exp < Mul < Add
_RANK = {Const: 0, X: 1, Log: 2, Pow: 3, Recip: 4, Exp: 5, Mul: 6, Add: 7}


@lru_cache(maxsize=65536)
def term_id(term: GermTerm) -> TermId:
    """
    Canonical id of a term.

    Equal terms get equal ids; ids sort by node kind first so that
    simplified products lead with their constant.
    """
    digest = hashlib.sha1(repr(term).encode("utf-8")).hexdigest()[:16]
    return TermId(f"{_RANK[type(term)]}{digest}")
