"""
High-precision real evaluation of germ terms.

``evaluate_interval`` returns a certified enclosure computed with mpmath's
interval context; ``evaluate_real`` returns a plain multiprecision value.
Each thread keeps its own mpmath contexts, so evaluations at different
precisions never race on a shared global precision.
"""

from __future__ import annotations

import logging
import threading
from typing import Any, Optional, Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.ctx_mp import MPContext

from ..core.errors import EvaluationError, PrecisionExhausted
from .nodes import Add, Const, Exp, GermTerm, Log, Mul, Pow, Recip, X, const, exp_k

logger = logging.getLogger(__name__)

# numbers (int, float, str, mpmath reals) or constant terms
Point = Union[int, float, str, Any, GermTerm]

_NODES = (Const, X, Add, Mul, Recip, Pow, Exp, Log)

_local = threading.local()


def _context(kind: str, precision: int) -> Any:
    contexts = getattr(_local, "contexts", None)
    if contexts is None:
        contexts = _local.contexts = {}
    key = (kind, precision)
    if key not in contexts:
        ctx = MPIntervalContext() if kind == "iv" else MPContext()
        ctx.prec = precision
        contexts[key] = ctx
    return contexts[key]


def real_context(precision: int = 256) -> Any:
    """The calling thread's mpmath real context at a precision"""
    return _context("mp", precision)


def tower_point(depth: int, base: int = 10) -> GermTerm:
    """The sample point exp_depth(base) as a constant term"""
    return exp_k(const(base), depth)


def evaluate_interval(term: GermTerm, x: Point, precision: int = 256) -> Any:
    """
    Certified enclosure of term(x).

    Raises EvaluationError when a logarithm or a fractional power receives a
    provably nonpositive argument (or a division by a provably zero value),
    and PrecisionExhausted when the enclosure is too wide to decide that,
    or an exponential argument outgrows the working precision.
    """
    ctx = _context("iv", precision)
    bound = ctx.mpf(2) ** (precision // 2)
    return _Evaluator(ctx, bound, interval=True).point_value(term, x)


def evaluate_real(term: GermTerm, x: Point, precision: int = 256) -> Any:
    """term(x) as an mpmath real at the given precision"""
    ctx = _context("mp", precision)
    bound = ctx.mpf(2) ** (precision - 16)
    return _Evaluator(ctx, bound, interval=False).point_value(term, x)


def interval_sign(term: GermTerm, x: Point, precision: int = 256) -> Optional[int]:
    """Sign of term(x) if the enclosure decides it, else None"""
    try:
        value = evaluate_interval(term, x, precision)
    except PrecisionExhausted:
        return None
    if (value > 0) is True:
        return 1
    if (value < 0) is True:
        return -1
    if value.a == 0 and value.b == 0:
        return 0
    return None


class _Evaluator:
    def __init__(self, ctx: Any, exp_bound: Any, interval: bool):
        self.ctx = ctx
        self.exp_bound = exp_bound
        self.interval = interval
        self.memo: dict[GermTerm, Any] = {}
        self.x: Any = None

    def point_value(self, term: GermTerm, x: Point) -> Any:
        if isinstance(x, _NODES):
            self.x = _Evaluator(self.ctx, self.exp_bound, self.interval).value(x)
        else:
            self.x = self.ctx.mpf(x)
        return self.value(term)

    def value(self, term: GermTerm) -> Any:
        cached = self.memo.get(term)
        if cached is None:
            cached = self.memo[term] = self._compute(term)
        return cached

    def _compute(self, term: GermTerm) -> Any:
        ctx = self.ctx
        if isinstance(term, Const):
            return term.value.to_mpf(ctx)
        if isinstance(term, X):
            if self.x is None:
                raise EvaluationError("x is unbound in a constant evaluation")
            return self.x
        if isinstance(term, Add):
            total = ctx.mpf(0)
            for t in term.terms:
                total = total + self.value(t)
            return total
        if isinstance(term, Mul):
            product = ctx.mpf(1)
            for f in term.factors:
                product = product * self.value(f)
            return product
        if isinstance(term, Recip):
            return 1 / self._nonzero(self.value(term.arg), "division")
        if isinstance(term, Pow):
            base = self.value(term.base)
            r = term.exponent
            if r.denominator == 1:
                if r < 0:
                    base = self._nonzero(base, "negative power")
                return base ** int(r)
            base = self._positive(base, "fractional power")
            return ctx.exp(ctx.mpf(r.numerator) / r.denominator * ctx.log(base))
        if isinstance(term, Exp):
            argument = self.value(term.arg)
            if (abs(argument) < self.exp_bound) is not True:
                raise PrecisionExhausted(
                    "exponential argument exceeds the working precision",
                    precision=ctx.prec,
                )
            return ctx.exp(argument)
        if isinstance(term, Log):
            return ctx.log(self._positive(self.value(term.arg), "logarithm"))
        raise TypeError(f"Not a germ term: {term!r}")

    def _positive(self, value: Any, what: str) -> Any:
        if (value > 0) is True:
            return value
        if (value <= 0) is True:
            raise EvaluationError(f"{what} of a nonpositive value")
        raise PrecisionExhausted(
            f"enclosure too wide to decide the {what} argument sign"
        )

    def _nonzero(self, value: Any, what: str) -> Any:
        if (value > 0) is True or (value < 0) is True:
            return value
        if not self.interval or (value.a == 0 and value.b == 0):
            raise EvaluationError(f"{what} by zero")
        raise PrecisionExhausted(f"enclosure too wide to exclude zero in {what}")
