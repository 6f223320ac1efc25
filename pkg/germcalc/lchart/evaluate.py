"""
Evaluation of germ terms on the Riemann surface of the logarithm.

Values live in the Log-chart: a node value (u, v) stands for the point
exp(u + i*v). Products, reciprocals and powers act linearly on (u, v),
exp maps (u, v) to (e^u cos v, e^u sin v) and log maps (u, v) to the
chart coordinates of the complex number u + i*v. Only sums leave the chart:
they are added in C and their argument is lifted to the branch closest to
the previous step's value. A step whose lift jumps by pi/2 or more is
halved.

Negative constants contribute a half turn of +pi. Half turns are counted
per node and cancel in pairs, so on the real axis a real germ lifts to 0
where it is positive and to +-pi where it is negative.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np

from ..core.errors import (
    BranchCollision,
    DomainViolation,
    PrecisionExhausted,
    UsageError,
)
from ..terms.nodes import Add, Const, Exp, GermTerm, Log, Mul, Pow, Recip, X
from ..terms.numeric import evaluate_real, real_context
from ..terms.printer import format_term
from .points import LPoint

logger = logging.getLogger(__name__)

MAX_HALVINGS = 20
# largest arg increment between consecutive points of a sampling path
MAX_ARG_STEP = 0.25


@dataclass
class PathEvalState:
    """Lifted arguments of the Add nodes at the last accepted point"""

    branches: dict[GermTerm, Any] = field(default_factory=dict)
    steps: int = 0
    halvings: int = 0


class _ChartEvaluation:
    """One evaluation at one point against the branches of the previous step"""

    def __init__(self, ctx: Any, point: LPoint, previous: dict[GermTerm, Any]):
        self.ctx = ctx
        self.point = (ctx.mpf(point.logmod), ctx.mpf(point.arg))
        self.previous = previous
        self.branches: dict[GermTerm, Any] = {}
        self.jump = ctx.mpf(0)
        self.memo: dict[GermTerm, tuple[Any, Any]] = {}
        # half turns (0 or 1) a node's arg carries from negative constants
        self.half_turns: dict[GermTerm, int] = {}
        self.exp_limit = ctx.mpf(ctx.prec - 10) * ctx.ln2
        self.collision = ctx.mpf(2) ** (-(ctx.prec // 2))

    def value(self, term: GermTerm) -> tuple[Any, Any]:
        cached = self.memo.get(term)
        if cached is None:
            cached = self.memo[term] = self._compute(term)
        return cached

    def _compute(self, term: GermTerm) -> tuple[Any, Any]:
        ctx = self.ctx
        if isinstance(term, X):
            return self.point
        if isinstance(term, Const):
            sign = term.value.sign()
            if sign == 0:
                return ctx.ninf, ctx.zero
            magnitude = abs(term.value.to_mpf(ctx))
            if sign > 0:
                return ctx.log(magnitude), ctx.zero
            self.half_turns[term] = 1
            return ctx.log(magnitude), +ctx.pi
        if isinstance(term, Mul):
            u, v = ctx.zero, ctx.zero
            turns = 0
            for f in term.factors:
                fu, fv = self.value(f)
                u, v = u + fu, v + fv
                turns += self.half_turns.get(f, 0)
            if turns % 2:
                self.half_turns[term] = 1
            return u, v - 2 * ctx.pi * (turns // 2)
        if isinstance(term, Recip):
            u, v = self.value(term.arg)
            if u == ctx.ninf:
                raise DomainViolation("division by zero on the surface")
            if self.half_turns.get(term.arg):
                self.half_turns[term] = 1
                return -u, 2 * ctx.pi - v
            return -u, -v
        if isinstance(term, Pow):
            u, v = self.value(term.base)
            exponent = term.exponent
            r = ctx.mpf(exponent.numerator) / exponent.denominator
            if u == ctx.ninf:
                if r < 0:
                    raise DomainViolation("negative power of zero on the surface")
                return u, ctx.zero
            if self.half_turns.get(term.base) and exponent.denominator == 1:
                parity = exponent.numerator % 2
                if parity:
                    self.half_turns[term] = 1
                return r * u, r * (v - ctx.pi) + parity * ctx.pi
            return r * u, r * v
        if isinstance(term, Exp):
            u, v = self.value(term.arg)
            if u > self.exp_limit:
                raise PrecisionExhausted(
                    "exponential argument too large for the working precision",
                    precision=ctx.prec,
                )
            modulus = ctx.exp(u)
            return modulus * ctx.cos(v), modulus * ctx.sin(v)
        if isinstance(term, Log):
            u, v = self.value(term.arg)
            if not u > 0:
                raise DomainViolation(
                    f"log argument {format_term(term.arg)} has modulus <= 1",
                    logmod=float(u),
                )
            return ctx.log(ctx.hypot(u, v)), ctx.atan2(v, u)
        if isinstance(term, Add):
            return self._sum(term)
        raise TypeError(f"Not a germ term: {term!r}")

    def _sum(self, term: Add) -> tuple[Any, Any]:
        ctx = self.ctx
        total = ctx.mpc(0)
        largest = ctx.zero
        for t in term.terms:
            u, v = self.value(t)
            if u == ctx.ninf:
                continue
            modulus = ctx.exp(u)
            largest = max(largest, modulus)
            total += ctx.mpc(modulus * ctx.cos(v), modulus * ctx.sin(v))
        size = abs(total)
        if size <= largest * self.collision:
            raise BranchCollision(
                f"sum {format_term(term)} passes through zero on the path"
            )
        principal = ctx.arg(total)
        previous = self.previous.get(term)
        if previous is None:
            lifted = principal
        else:
            turns = ctx.nint((previous - principal) / (2 * ctx.pi))
            lifted = principal + 2 * ctx.pi * turns
            self.jump = max(self.jump, abs(lifted - previous))
        self.branches[term] = lifted
        return ctx.log(size), lifted


class PathEvaluator:
    """Continuous lift of a term along paths that start on the positive real axis"""

    def __init__(self, term: GermTerm, precision: int = 256):
        if precision < 64:
            raise UsageError(f"precision {precision} is below 64 bits")
        self.term = term
        self.ctx = real_context(precision)
        self.state = PathEvalState()

    def start(self, point: LPoint) -> LPoint:
        if point.arg != 0:
            raise UsageError("paths must start on the positive real axis (arg 0)")
        self.state = PathEvalState()
        evaluation = _ChartEvaluation(self.ctx, point, {})
        value = evaluation.value(self.term)
        self._commit(evaluation)
        return self._to_point(value)

    def advance(self, point: LPoint, target: LPoint, depth: int = 0) -> LPoint:
        """Value at target, moving from point (already accepted)"""
        evaluation = _ChartEvaluation(self.ctx, target, self.state.branches)
        value = evaluation.value(self.term)
        if evaluation.jump < self.ctx.pi / 2:
            self._commit(evaluation)
            return self._to_point(value)
        if depth >= MAX_HALVINGS:
            raise BranchCollision(
                f"no continuous lift of {format_term(self.term)} near "
                f"({target.logmod}, {target.arg}) after {MAX_HALVINGS} halvings"
            )
        self.state.halvings += 1
        logger.debug("halving step towards %s (depth %d)", target, depth + 1)
        middle = LPoint(
            (point.logmod + target.logmod) / 2, (point.arg + target.arg) / 2
        )
        self.advance(point, middle, depth + 1)
        return self.advance(middle, target, depth + 1)

    def _commit(self, evaluation: _ChartEvaluation) -> None:
        self.state.branches.update(evaluation.branches)
        self.state.steps += 1

    def _to_point(self, value: tuple[Any, Any]) -> LPoint:
        u, v = value
        return LPoint(float(u), float(v))


def eval_along_path(
    f: GermTerm, path: Iterable[LPoint], precision: int = 256
) -> list[LPoint]:
    """Values of the continuous lift of f at every point of the path"""
    points = list(path)
    if not points:
        return []
    evaluator = PathEvaluator(f, precision)
    values = [evaluator.start(points[0])]
    for previous, point in zip(points, points[1:]):
        values.append(evaluator.advance(previous, point))
    logger.debug(
        "evaluated %s along %d points with %d halvings",
        format_term(f),
        len(points),
        evaluator.state.halvings,
    )
    return values


def evaluate_points(
    f: GermTerm, points: Iterable[LPoint], precision: int = 256
) -> list[LPoint]:
    """
    Values of f at sample points, each reached along the circle arc from the
    positive real axis at constant modulus.
    """
    points = list(points)
    results: list[Optional[LPoint]] = [None] * len(points)
    arcs: dict[tuple[float, int], list[int]] = {}
    for i, p in enumerate(points):
        side = 0 if p.arg == 0 else (1 if p.arg > 0 else -1)
        arcs.setdefault((p.logmod, side), []).append(i)

    for (logmod, side), indices in arcs.items():
        if side == 0:
            value = eval_along_path(f, [LPoint(logmod, 0.0)], precision)[0]
            for i in indices:
                results[i] = value
            continue
        indices.sort(key=lambda i: abs(points[i].arg))
        path = [LPoint(logmod, 0.0)]
        positions = []
        for i in indices:
            last = path[-1].arg
            steps = max(1, math.ceil(abs(points[i].arg - last) / MAX_ARG_STEP))
            for arg in np.linspace(last, points[i].arg, steps + 1)[1:]:
                path.append(LPoint(logmod, float(arg)))
            path[-1] = points[i]
            positions.append(len(path) - 1)
        values = eval_along_path(f, path, precision)
        for i, position in zip(indices, positions):
            results[i] = values[position]
    return [r for r in results if r is not None]


def sample_domain(
    spec: Any,
    n_radial: int,
    n_angular: int,
    shrink: float,
    start_radius: float = 10.0,
    radial_span: float = 4.0,
    arg_cap: Optional[float] = None,
    precision: int = 256,
) -> list[LPoint]:
    """
    Grid of points inside U_h: n_radial log-moduli spanning radial_span from
    the start radius, and args +-t*(1 - shrink)*h(|x|) for
    t in {0, 1/n_angular, ..., 1}.
    """
    if not 0 < shrink < 1:
        raise UsageError(f"shrink {shrink} is not in (0, 1)")
    ctx = real_context(precision)
    base = max(spec.base_radius, start_radius)
    first = math.log(base)
    points = []
    for logmod in np.linspace(first, first + radial_span, n_radial):
        modulus = ctx.exp(ctx.mpf(float(logmod)))
        bound = float(evaluate_real(spec.bound, modulus, precision))
        if bound <= 0:
            raise DomainViolation(
                f"domain bound {format_term(spec.bound)} is not positive at "
                f"|x| = e^{float(logmod)}"
            )
        if arg_cap is not None:
            bound = min(bound, arg_cap)
        points.append(LPoint(float(logmod), 0.0))
        for t in np.linspace(0.0, 1.0, n_angular + 1)[1:]:
            arg = float(t) * (1 - shrink) * bound
            points.append(LPoint(float(logmod), arg))
            points.append(LPoint(float(logmod), -arg))
    return points
