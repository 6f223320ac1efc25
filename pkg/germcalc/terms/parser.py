"""
Recursive-descent parser for the germ expression grammar.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := atom ("^" rational)?
    atom   := rational | "pi" | "x" | "exp" "(" expr ")" | "log" "(" expr ")"
            | ("exp_"|"log_") nat "(" expr ")" | "(" expr ")" | "-" atom

``sqrt(e)`` is sugar for ``e^(1/2)``; a parenthesized expression or function
call followed by ``(g)`` is the composition with g.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..core.errors import ArityError, TermSyntaxError
from .constants import ExactConstant
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
    const,
    exp_k,
    log_k,
    substitute,
)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)
_SUGAR_RE = re.compile(r"(exp|log)_(\d+)$")
_FUNCTIONS = ("exp", "log", "sqrt")


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise TermSyntaxError(
                f"Unexpected character {text[pos + offset]!r}", pos + offset
            )
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    # -- token helpers -------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def at(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.current.text or "end of input"
            raise TermSyntaxError(
                f"Expected {text!r}, found {found!r}", self.current.pos
            )
        return self.advance()

    # -- grammar -------------------------------------------------------------

    def parse(self) -> GermTerm:
        term = self.expr()
        if self.current.kind != "end":
            raise TermSyntaxError(f"Unexpected {self.current.text!r}", self.current.pos)
        return term

    def expr(self) -> GermTerm:
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            negate = self.advance().text == "-"
            item = self.term()
            terms.append(Mul((const(-1), item)) if negate else item)
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> GermTerm:
        literal_one = (
            self.current.kind == "int"
            and int(self.current.text) == 1
            and not (self.peek().text == "/" and self.peek(2).kind == "int")
        )
        factors = [self.factor()]
        if literal_one and isinstance(factors[0], Const) and self.at("/"):
            self.advance()
            factors = [Recip(self.factor())]
        while self.at("*") or self.at("/"):
            divide = self.advance().text == "/"
            item = self.factor()
            factors.append(Recip(item) if divide else item)
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> GermTerm:
        base = self.atom()
        if self.at("^"):
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        if self.at("("):
            self.advance()
            value = self.signed_rational()
            self.expect(")")
            return value
        return self.signed_rational()

    def signed_rational(self) -> Fraction:
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.advance().text == "-" else 1
        value = self.rational()
        if value is None:
            raise TermSyntaxError("Expected a rational exponent", self.current.pos)
        return sign * value

    def rational(self) -> Optional[Fraction]:
        if self.current.kind != "int":
            return None
        numerator = int(self.advance().text)
        if self.at("/") and self.peek().kind == "int":
            slash = self.advance()
            denominator = int(self.advance().text)
            if denominator == 0:
                raise TermSyntaxError("Division by zero in rational literal", slash.pos)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def atom(self) -> GermTerm:
        token = self.current
        if token.kind == "int":
            value = self.rational()
            assert value is not None
            return self.no_application(Const(ExactConstant(value)), token)
        if token.kind == "name":
            return self.named(token)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            folded = _fold_pi_constant(inner)
            if folded is not None:
                inner = Const(folded)
            return self.applications(inner)
        if self.at("-"):
            self.advance()
            if self.current.kind == "int" or self.current.text == "pi":
                literal = self.atom()
                if isinstance(literal, Const):
                    return Const(-literal.value)
                return Mul((const(-1), literal))
            return Mul((const(-1), self.atom()))
        found = token.text or "end of input"
        raise TermSyntaxError(f"Unexpected {found!r}", token.pos)

    def named(self, token: Token) -> GermTerm:
        name = token.text
        self.advance()
        if name == "x":
            return self.no_application(X(), token)
        if name == "pi":
            return self.no_application(Const(ExactConstant.pi()), token)
        sugar = _SUGAR_RE.match(name)
        if sugar is None and name not in _FUNCTIONS:
            raise TermSyntaxError(f"Unknown name {name!r}", token.pos)
        argument = self.call_argument(name, token)
        if sugar:
            depth = int(sugar.group(2))
            wrap = exp_k if sugar.group(1) == "exp" else log_k
            result = wrap(argument, depth)
        elif name == "exp":
            result = Exp(argument)
        elif name == "log":
            result = Log(argument)
        else:
            result = Pow(argument, Fraction(1, 2))
        return self.applications(result)

    def call_argument(self, name: str, token: Token) -> GermTerm:
        if not self.at("("):
            raise ArityError(f"{name} expects one argument", token.pos)
        open_paren = self.advance()
        if self.at(")"):
            raise ArityError(f"{name} expects one argument, got none", open_paren.pos)
        argument = self.expr()
        if self.at(","):
            raise ArityError(f"{name} expects one argument, got more", self.current.pos)
        self.expect(")")
        return argument

    def applications(self, term: GermTerm) -> GermTerm:
        """``f(g)`` composition sugar"""
        while self.at("("):
            open_paren = self.advance()
            if self.at(")"):
                raise ArityError("Application expects one argument", open_paren.pos)
            argument = self.expr()
            if self.at(","):
                raise ArityError(
                    "Application expects one argument, got more", self.current.pos
                )
            self.expect(")")
            term = substitute(term, argument)
        return term

    def no_application(self, term: GermTerm, token: Token) -> GermTerm:
        if self.at("("):
            raise TermSyntaxError(
                f"Implicit multiplication after {token.text!r} is not supported",
                self.current.pos,
            )
        return term


def parse(text: str) -> GermTerm:
    """Parse an expression string into a term"""
    return _Parser(text).parse()


def _fold_pi_constant(term: GermTerm) -> Optional[ExactConstant]:
    """Value of a constant expression involving pi, when it is q + r*pi"""
    value = _constant_value(term)
    if value is None or value.is_rational or isinstance(term, Const):
        return None
    return value


def _constant_value(term: GermTerm) -> Optional[ExactConstant]:
    if isinstance(term, Const):
        return term.value
    if isinstance(term, Add):
        total = ExactConstant.of(0)
        for t in term.terms:
            value = _constant_value(t)
            if value is None:
                return None
            total = total + value
        return total
    if isinstance(term, Mul):
        product: Optional[ExactConstant] = ExactConstant.of(1)
        for f in term.factors:
            value = _constant_value(f)
            if value is None or product is None:
                return None
            product = product.times(value)
        return product
    if isinstance(term, Recip):
        value = _constant_value(term.arg)
        return None if value is None else value.reciprocal()
    return None
