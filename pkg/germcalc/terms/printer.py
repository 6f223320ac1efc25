"""
Expression printer.

The output is accepted by ``parse`` and parses back to a structurally equal
term. Constants other than rationals and +-pi print in parentheses, which
the parser folds back into a single constant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any

from .constants import ExactConstant
from .nodes import Add, Const, Exp, GermTerm, Log, Mul, Pow, Recip, X

_ONE = ExactConstant.of(1)
_MINUS_ONE = ExactConstant.of(-1)


@lru_cache(maxsize=65536)
def format_term(term: GermTerm) -> str:
    """Render a term in the input grammar"""
    return _expr(term)


def _expr(term: GermTerm) -> str:
    if not isinstance(term, Add):
        return _term(term)
    parts = [_term(term.terms[0])]
    for summand in term.terms[1:]:
        if _is_negation(summand):
            assert isinstance(summand, Mul)
            parts.append(" - " + _term(summand.factors[1]))
        else:
            parts.append(" + " + _term(summand))
    return "".join(parts)


def _term(term: GermTerm) -> str:
    if isinstance(term, Add):
        return f"({_expr(term)})"
    if isinstance(term, Mul):
        return _mul(term)
    if isinstance(term, Recip):
        return "1/" + _divisor(term.arg)
    if isinstance(term, Const):
        return _const(term.value)
    return _factor(term)


def _mul(term: Mul) -> str:
    factors = term.factors
    if _is_negation(term):
        operand = factors[1]
        if isinstance(operand, Const):
            if not _is_literal(operand.value):
                return "-" + _const(operand.value)
            return f"-({_expr(operand)})"
        return "-" + _atom(operand)
    parts = []
    for i, factor in enumerate(factors):
        if i == 0:
            if isinstance(factor, Recip):
                parts.append(f"({_term(factor)})")
            elif (
                isinstance(factor, Const)
                and factor.value == _ONE
                and len(factors) > 1
                and isinstance(factors[1], Recip)
            ):
                parts.append("(1)")
            elif isinstance(factor, Const) and _is_literal(factor.value):
                parts.append(_const(factor.value))
            else:
                parts.append(_operand(factor))
        elif isinstance(factor, Recip):
            parts.append("/" + _divisor(factor.arg))
        else:
            parts.append("*" + _operand(factor))
    return "".join(parts)


def _operand(term: GermTerm) -> str:
    """A factor of a product in non-leading position"""
    if isinstance(term, Const):
        value = term.value
        if not _is_literal(value) or value.sign() >= 0:
            return _const(value)
        return f"({_const(value)})"
    if isinstance(term, (Add, Mul, Recip)):
        return f"({_term(term)})"
    return _factor(term)


def _divisor(term: GermTerm) -> str:
    """Operand of "/"; the parser reads a single factor there"""
    if isinstance(term, Const):
        if not _is_literal(term.value):
            return _const(term.value)
        return f"({_const(term.value)})"
    if isinstance(term, (Add, Mul, Recip)):
        return f"({_term(term)})"
    if isinstance(term, Pow) and isinstance(term.base, Const):
        # "x^2/2^3" would read 2/2 as one rational exponent
        return f"({_factor(term)})"
    return _factor(term)


def _factor(term: GermTerm) -> str:
    if isinstance(term, Pow):
        return f"{_power_base(term.base)}^{_exponent(term.exponent)}"
    return _atom(term)


def _atom(term: GermTerm) -> str:
    if isinstance(term, X):
        return "x"
    if isinstance(term, Exp):
        return f"exp({_expr(term.arg)})"
    if isinstance(term, Log):
        return f"log({_expr(term.arg)})"
    if isinstance(term, Const):
        value = term.value
        text = _const(value)
        if (
            value.is_rational
            and value.rational_part.denominator == 1
            and value.sign() >= 0
        ):
            return text
        if value == ExactConstant.pi() or not _is_literal(value):
            return text
        return f"({text})"
    return f"({_term(term)})"


def _power_base(term: GermTerm) -> str:
    return _atom(term)


def _exponent(exponent: Fraction) -> str:
    if exponent.denominator == 1 and exponent >= 0:
        return str(exponent.numerator)
    return f"({exponent})"


def _is_negation(term: GermTerm) -> bool:
    return (
        isinstance(term, Mul)
        and len(term.factors) == 2
        and isinstance(term.factors[0], Const)
        and term.factors[0].value == _MINUS_ONE
    )


def _is_literal(value: ExactConstant) -> bool:
    """Constants with literal syntax: rationals and +-pi"""
    return value.is_rational or (
        value.rational_part == 0 and abs(value.pi_coefficient) == 1
    )


def _const(value: ExactConstant) -> str:
    """Literal text; other constants are parenthesized"""
    q, r = value.rational_part, value.pi_coefficient
    if r == 0:
        return str(q)
    if q == 0:
        text = _pi_multiple(r)
    else:
        text = f"{q} {'+' if r > 0 else '-'} {_pi_multiple(abs(r))}"
    return text if _is_literal(value) else f"({text})"


def _pi_multiple(r: Fraction) -> str:
    sign = "-" if r < 0 else ""
    r = abs(r)
    head = "pi" if r.numerator == 1 else f"{r.numerator}*pi"
    if r.denominator == 1:
        return sign + head
    return f"{sign}{head}/{r.denominator}"


def to_ast(term: GermTerm) -> dict[str, Any]:
    """Nested node/children mapping of a term, for JSON output"""
    if isinstance(term, Const):
        return {"node": "Const", "value": str(term.value)}
    if isinstance(term, X):
        return {"node": "X"}
    if isinstance(term, Add):
        return {"node": "Add", "terms": [to_ast(t) for t in term.terms]}
    if isinstance(term, Mul):
        return {"node": "Mul", "factors": [to_ast(f) for f in term.factors]}
    if isinstance(term, Pow):
        return {
            "node": "Pow",
            "base": to_ast(term.base),
            "exponent": str(term.exponent),
        }
    return {"node": type(term).__name__, "arg": to_ast(term.arg)}
