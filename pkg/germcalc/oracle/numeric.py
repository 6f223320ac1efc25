"""
Brute-force numeric asymptotics.

Estimates limits, dominance and level of raw term ASTs from high-precision
evaluation on escalating grids. Nothing here simplifies a term or consults
the symbolic engine: the estimates exist to cross-check it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from ..core.config import get_settings
from ..core.errors import EvaluationError, NoSandwichFound, PrecisionExhausted
from ..terms.nodes import X_TERM, GermTerm, Pow, const, exp_k, log_k
from ..terms.numeric import evaluate_real, real_context
from ..terms.printer import format_term

logger = logging.getLogger(__name__)

CONFIRMED = "confirmed"
WEAK = "weak"

LIMIT_GRID = (1e2, 1e4, 1e8, 1e16, 1e32)
COMPARE_GRID = (1e1, 1e2, 1e4, 1e8, 1e16, 1e32, 1e64, 1e128)
LEVEL_BASES = (10, 20, 40)
LEVEL_TOWER = 2

# last grid values agreeing within this relative tolerance settle a finite limit
AGREEMENT = 1e-6
# magnitude from which a monotone run counts as divergent
DIVERGENCE = 1e8
MIN_POINTS = 3

OracleValue = Union[float, str, int]


@dataclass
class OracleEstimate:
    quantity: str
    value: OracleValue
    confidence: str
    trace: dict[str, Any] = field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        return self.confidence == CONFIRMED

    def to_dict(self) -> dict[str, Any]:
        return {
            "quantity": self.quantity,
            "value": self.value,
            "confidence": self.confidence,
            "trace": self.trace,
        }


def _precision(precision: Optional[int]) -> int:
    return precision or get_settings().precision_bits


def _label(x: Any) -> str:
    return format_term(x) if isinstance(x, GermTerm) else str(x)


def _sample(
    f: GermTerm, grid: Sequence[Any], precision: int
) -> tuple[list[Any], list[Any], list[str]]:
    """Values of f on the grid at precision and 2*precision; skipped points named"""
    points, values, skipped = [], [], []
    for x in grid:
        try:
            low = evaluate_real(f, x, precision)
            high = evaluate_real(f, x, 2 * precision)
        except (PrecisionExhausted, EvaluationError) as e:
            logger.debug("oracle skips %s at x = %s: %s", format_term(f), _label(x), e)
            skipped.append(_label(x))
            continue
        ctx = real_context(2 * precision)
        tolerance = ctx.mpf(2) ** (-(precision // 2)) * max(1, abs(high))
        if abs(high - low) > tolerance:
            logger.debug(
                "oracle drops %s at x = %s: precisions disagree",
                format_term(f),
                _label(x),
            )
            skipped.append(_label(x))
            continue
        points.append(x)
        values.append(high)
    return points, values, skipped


def _monotone(values: Sequence[Any]) -> int:
    """1 if strictly increasing, -1 if strictly decreasing, else 0"""
    pairs = list(zip(values, values[1:]))
    if all(b > a for a, b in pairs):
        return 1
    if all(b < a for a, b in pairs):
        return -1
    return 0


def _reduce(values: Sequence[Any]) -> tuple[OracleValue, str]:
    """Limit estimate and confidence from values on an escalating grid"""
    if len(values) < MIN_POINTS:
        raise PrecisionExhausted(
            f"only {len(values)} grid points could be evaluated", points=len(values)
        )
    a, b, c = values[-3:]
    scale = max(1, abs(c))
    if all(v == 0 for v in values[-3:]):
        return 0, CONFIRMED
    if abs(c - b) <= AGREEMENT * scale and abs(c - b) <= abs(b - a):
        if abs(c) <= AGREEMENT:
            return 0, CONFIRMED
        return float(c), CONFIRMED

    magnitudes = [abs(v) for v in values[-3:]]
    trend = _monotone(magnitudes)
    if trend > 0:
        sign = "+inf" if c > 0 else "-inf"
        confident = abs(c) >= DIVERGENCE and _monotone(values[-3:]) != 0
        return sign, CONFIRMED if confident else WEAK
    if trend < 0 and abs(c) < AGREEMENT:
        return 0, WEAK
    return float(c), WEAK


def numeric_limit(
    f: GermTerm,
    grid: Sequence[Any] = LIMIT_GRID,
    precision: Optional[int] = None,
) -> OracleEstimate:
    """Limit of f at +infinity estimated on an escalating grid"""
    precision = _precision(precision)
    points, values, skipped = _sample(f, grid, precision)
    value, confidence = _reduce(values)
    return OracleEstimate(
        "limit",
        value,
        confidence,
        {
            "grid": [str(x) for x in points],
            "values": [str(v) for v in values],
            "skipped": skipped,
            "precisions": [precision, 2 * precision],
        },
    )


def numeric_compare(
    f: GermTerm,
    g: GermTerm,
    grid: Sequence[Any] = COMPARE_GRID,
    precision: Optional[int] = None,
) -> OracleEstimate:
    """Dominance of two positive germs from the trend of f/g"""
    precision = _precision(precision)
    f_points, f_values, f_skipped = _sample(f, grid, precision)
    g_points, g_values, g_skipped = _sample(g, f_points, precision)
    by_point = dict(zip(f_points, f_values))
    ratios = []
    for x, gv in zip(g_points, g_values):
        fv = by_point[x]
        if not (fv > 0 and gv > 0):
            raise EvaluationError(f"comparison needs positive values at x = {x}")
        ratios.append(fv / gv)

    value, confidence = _reduce(ratios)
    if value == 0:
        relation = "≺"
    elif value in ("+inf", "-inf"):
        relation = "≻"
    else:
        relation = "≍"
    return OracleEstimate(
        "compare",
        relation,
        confidence,
        {
            "grid": [str(x) for x in g_points],
            "ratios": [str(r) for r in ratios],
            "skipped": sorted(set(f_skipped) | set(g_skipped)),
            "precisions": [precision, 2 * precision],
        },
    )


# ---------------------------------------------------------------------------
# Level by sandwich search
# ---------------------------------------------------------------------------


def level_grid(bases: Sequence[int] = LEVEL_BASES, tower: int = LEVEL_TOWER) -> list:
    """Sample points exp_j(t) as constant terms"""
    return [exp_k(const(t), j) for j in range(tower + 1) for t in bases]


def _bound(k: int, l: int, nu: Fraction) -> GermTerm:
    return exp_k(Pow(log_k(X_TERM, l), nu), k)


def _side(term: GermTerm, x: GermTerm, precision: int) -> Any:
    """Value of a sandwich bound; None when it outgrows the precision"""
    try:
        return evaluate_real(term, x, precision)
    except PrecisionExhausted:
        return None


def _sandwich(
    values: list[tuple[GermTerm, Any]], k: int, l: int, nu: int, precision: int
) -> Optional[int]:
    """Grid points checked if exp_k((log_l x)^(1/nu)) <= f <= exp_k((log_l x)^nu)"""
    lower = _bound(k, l, Fraction(1, nu))
    upper = _bound(k, l, Fraction(nu))
    checked = 0
    for x, fx in values:
        try:
            lo = _side(lower, x, precision)
            hi = _side(upper, x, precision)
        except EvaluationError:
            continue
        if lo is None or fx < lo:
            return None
        if hi is not None and fx > hi:
            return None
        checked += 1
    return checked


def numeric_level(
    f: GermTerm,
    max_k: int = 2,
    max_nu: int = 4,
    precision: Optional[int] = None,
) -> OracleEstimate:
    """
    Level of f from sandwiches exp_k((log_l x)^(1/nu)) <= f <= exp_k((log_l x)^nu)
    holding at every point of the exp_j(t) grid; the level is k - l.

    Confirmed when every sandwich found gives the same k - l and one of them
    was checked at MIN_POINTS grid points or more.
    """
    precision = _precision(precision)
    points, samples, skipped = _sample(f, level_grid(), precision)
    values = list(zip(points, samples))

    found = []
    for k in range(max_k + 1):
        for l in range(max_k + 1):
            for nu in range(1, max_nu + 1):
                checked = _sandwich(values, k, l, nu, 2 * precision)
                if checked:
                    found.append({"k": k, "l": l, "nu": nu, "points": checked})
                    break

    if not found:
        raise NoSandwichFound(
            f"no sandwich with k, l <= {max_k} and nu <= {max_nu} holds for "
            f"{format_term(f)}"
        )
    levels = {s["k"] - s["l"] for s in found}
    best = max(found, key=lambda s: (s["points"], -s["nu"]))
    confirmed = len(levels) == 1 and best["points"] >= MIN_POINTS
    return OracleEstimate(
        "level",
        best["k"] - best["l"],
        CONFIRMED if confirmed else WEAK,
        {
            "sandwiches": found,
            "points": len(values),
            "skipped": skipped,
            "precisions": [precision, 2 * precision],
        },
    )
