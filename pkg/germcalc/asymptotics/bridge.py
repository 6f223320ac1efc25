"""Conversion between germ terms and sympy expressions"""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..core.errors import Undecided
from ..terms.constants import ExactConstant
from ..terms.nodes import Add, Const, Exp, GermTerm, Log, Mul, Pow, Recip, X

SYMBOL = sympy.Symbol("x", positive=True)


def term_to_sympy(term: GermTerm, x: sympy.Symbol = SYMBOL) -> sympy.Expr:
    if isinstance(term, Const):
        return term.value.to_sympy()
    if isinstance(term, X):
        return x
    if isinstance(term, Add):
        return sympy.Add(*(term_to_sympy(t, x) for t in term.terms))
    if isinstance(term, Mul):
        return sympy.Mul(*(term_to_sympy(f, x) for f in term.factors))
    if isinstance(term, Recip):
        return 1 / term_to_sympy(term.arg, x)
    if isinstance(term, Pow):
        r = term.exponent
        return term_to_sympy(term.base, x) ** sympy.Rational(r.numerator, r.denominator)
    if isinstance(term, Exp):
        return sympy.exp(term_to_sympy(term.arg, x))
    if isinstance(term, Log):
        return sympy.log(term_to_sympy(term.arg, x))
    raise TypeError(f"Not a germ term: {term!r}")


def sympy_to_term(expr: sympy.Expr, x: sympy.Symbol = SYMBOL) -> GermTerm:
    """
    Rebuild a term from a sympy expression made of +, *, rational powers,
    exp, log, pi and E. Raises Undecided for anything else.
    """
    expr = sympy.sympify(expr)
    if expr.is_number:
        exact = ExactConstant.from_sympy(expr)
        if exact is not None:
            return Const(exact)
    if expr == x:
        return X()
    if expr == sympy.E:
        return Exp(Const(ExactConstant.of(1)))
    if isinstance(expr, sympy.exp):
        return Exp(sympy_to_term(expr.args[0], x))
    if isinstance(expr, sympy.log):
        return Log(sympy_to_term(expr.args[0], x))
    if isinstance(expr, sympy.Add):
        return Add(tuple(sympy_to_term(a, x) for a in expr.args))
    if isinstance(expr, sympy.Mul):
        return Mul(tuple(sympy_to_term(a, x) for a in expr.args))
    if isinstance(expr, sympy.Pow):
        base, exponent = expr.args
        if isinstance(exponent, sympy.Rational):
            r = Fraction(int(exponent.p), int(exponent.q))
            inner = sympy_to_term(base, x)
            return Recip(inner) if r == -1 else Pow(inner, r)
        return Exp(Mul((sympy_to_term(exponent, x), Log(sympy_to_term(base, x)))))
    raise Undecided(f"Expression {expr} has no germ term counterpart")
