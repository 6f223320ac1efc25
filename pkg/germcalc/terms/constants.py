"""Exact constants of the form q + r*pi with rational q and r"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

import mpmath
import sympy

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class ExactConstant:
    """
    Value ``rational_part + pi_coefficient * pi``.

    pi is irrational, so the representation is unique and field-wise
    equality is value equality.
    """

    rational_part: Fraction = Fraction(0)
    pi_coefficient: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rational_part", Fraction(self.rational_part))
        object.__setattr__(self, "pi_coefficient", Fraction(self.pi_coefficient))

    @classmethod
    def of(cls, value: Rational) -> "ExactConstant":
        return cls(Fraction(value), Fraction(0))

    @classmethod
    def pi(cls, coefficient: Rational = 1) -> "ExactConstant":
        return cls(Fraction(0), Fraction(coefficient))

    @property
    def is_rational(self) -> bool:
        return self.pi_coefficient == 0

    @property
    def is_zero(self) -> bool:
        return self.rational_part == 0 and self.pi_coefficient == 0

    def __add__(self, other: "ExactConstant") -> "ExactConstant":
        return ExactConstant(
            self.rational_part + other.rational_part,
            self.pi_coefficient + other.pi_coefficient,
        )

    def __neg__(self) -> "ExactConstant":
        return ExactConstant(-self.rational_part, -self.pi_coefficient)

    def __sub__(self, other: "ExactConstant") -> "ExactConstant":
        return self + (-other)

    def times(self, other: "ExactConstant") -> Optional["ExactConstant"]:
        """Product, or None when it would leave Q + Q*pi (a pi**2 term)."""
        if not self.is_rational and not other.is_rational:
            return None
        if self.is_rational:
            q = self.rational_part
            return ExactConstant(q * other.rational_part, q * other.pi_coefficient)
        return other.times(self)

    def reciprocal(self) -> Optional["ExactConstant"]:
        """1/c when it stays in the field (rational, nonzero c)."""
        if self.is_rational and self.rational_part != 0:
            return ExactConstant(1 / self.rational_part)
        return None

    def power(self, exponent: Fraction) -> Optional["ExactConstant"]:
        """c**r when exactly representable, else None."""
        exponent = Fraction(exponent)
        if not self.is_rational:
            return self if exponent == 1 else None
        q = self.rational_part
        if exponent.denominator == 1:
            if q == 0 and exponent < 0:
                return None
            return ExactConstant(q ** int(exponent))
        if q <= 0:
            return None
        num = _exact_root(q.numerator, exponent.denominator)
        den = _exact_root(q.denominator, exponent.denominator)
        if num is None or den is None:
            return None
        return ExactConstant(Fraction(num, den) ** exponent.numerator)

    def sign(self) -> int:
        """Exact sign; pi is only evaluated when both parts are nonzero."""
        q, r = self.rational_part, self.pi_coefficient
        if r == 0:
            return (q > 0) - (q < 0)
        if q == 0 or (q > 0) == (r > 0):
            return (r > 0) - (r < 0)
        # q and r have opposite signs: compare |q| with |r|*pi
        prec = 64
        while True:
            with mpmath.workprec(prec):
                value = mpmath.mpf(q.numerator) / q.denominator + mpmath.pi * (
                    mpmath.mpf(r.numerator) / r.denominator
                )
                if abs(value) > mpmath.mpf(2) ** (-prec // 2) * (1 + abs(q)):
                    return 1 if value > 0 else -1
            prec *= 2

    def to_sympy(self) -> sympy.Expr:
        q, r = self.rational_part, self.pi_coefficient
        return sympy.Rational(q.numerator, q.denominator) + sympy.Rational(
            r.numerator, r.denominator
        ) * sympy.pi

    def to_mpf(self, ctx: Any = mpmath.mp) -> Any:
        """Value in an mpmath context (real or interval)."""
        q, r = self.rational_part, self.pi_coefficient
        value = ctx.mpf(q.numerator) / q.denominator
        if r:
            value += ctx.pi * (ctx.mpf(r.numerator) / r.denominator)
        return value

    def __float__(self) -> float:
        return float(self.rational_part) + float(self.pi_coefficient) * math.pi

    def __str__(self) -> str:
        q, r = self.rational_part, self.pi_coefficient
        if r == 0:
            return str(q)
        if q == 0:
            return f"{r}*pi"
        return f"{q} + {r}*pi"

    @classmethod
    def from_sympy(cls, value: sympy.Expr) -> Optional["ExactConstant"]:
        """Recognize q + r*pi in a sympy constant, else None."""
        value = sympy.expand(value)
        r = value.coeff(sympy.pi)
        q = sympy.expand(value - r * sympy.pi)
        if isinstance(r, sympy.Rational) and isinstance(q, sympy.Rational):
            return cls(Fraction(int(q.p), int(q.q)), Fraction(int(r.p), int(r.q)))
        return None


def _exact_root(n: int, k: int) -> Optional[int]:
    root, exact = sympy.integer_nthroot(n, k)
    return int(root) if exact else None


ZERO = ExactConstant.of(0)
ONE = ExactConstant.of(1)
MINUS_ONE = ExactConstant.of(-1)
