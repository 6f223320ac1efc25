"""
Sampled verification of continuation properties.

Every check samples a real domain, evaluates the continuous lift of the
germ at the samples and reduces the values to a CheckReport. Reports are
sampled evidence: a failure always names a witness, a pass only means no
sample contradicted the property.

Radial bands split the sampled log-moduli into ``thresholds.n_bands``
consecutive groups; "bounded" and "tends to zero" verdicts compare the
band maxima.

Checks defined for a class of germs (infinitely increasing germs, units)
classify their input first and record the outcome under
``details["precondition"]``. A germ known to lie outside the class gets an
inconclusive verdict whatever the samples say.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from ..asymptotics.limits import GermClass, LimitKind, classify, limit
from ..core.config import CheckParams
from ..core.errors import DepthExceeded, Undecided
from ..terms.nodes import GermTerm
from ..terms.numeric import evaluate_real, real_context
from ..terms.printer import format_term
from .evaluate import evaluate_points, sample_domain
from .points import LPoint, distance_to_one

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckReport:
    check: str
    verdict: str
    samples: int
    statistic: Optional[float] = None
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    # evaluated samples, written by --dump
    rows: list[dict[str, float]] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "samples": self.samples,
            "statistic": _finite(self.statistic),
            "witnesses": self.witnesses,
            "details": self.details,
        }


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or math.isfinite(value):
        return value
    return None


def _witness(x: LPoint, y: Optional[LPoint] = None, **extra: Any) -> dict[str, Any]:
    data: dict[str, Any] = {"x": x.to_dict()}
    if y is not None:
        data["f(x)"] = y.to_dict()
    data.update(extra)
    return data


@dataclass
class _Samples:
    points: list[LPoint]
    values: list[LPoint]

    def rows(self) -> list[dict[str, float]]:
        return [
            {
                "logmod": x.logmod,
                "arg": x.arg,
                "value_logmod": y.logmod,
                "value_arg": y.arg,
            }
            for x, y in zip(self.points, self.values)
        ]


def _sample(f: GermTerm, spec: Any, params: CheckParams) -> _Samples:
    points = sample_domain(
        spec,
        params.n_radial,
        params.n_angular,
        params.shrink,
        start_radius=params.start_radius,
        radial_span=params.radial_span,
        arg_cap=params.arg_cap,
        precision=params.precision_bits,
    )
    values = evaluate_points(f, points, params.precision_bits)
    logger.debug("sampled %s at %d points", format_term(f), len(points))
    return _Samples(points, values)


def _bands(points: list[LPoint], n_bands: int) -> list[list[int]]:
    """Sample indices grouped into radial bands of increasing modulus"""
    logmods = sorted({p.logmod for p in points})
    groups = np.array_split(np.array(logmods), min(n_bands, len(logmods)))
    index = {}
    for b, group in enumerate(groups):
        for logmod in group:
            index[float(logmod)] = b
    bands: list[list[int]] = [[] for _ in groups]
    for i, p in enumerate(points):
        bands[index[p.logmod]].append(i)
    return bands


def _band_maxima(values: list[float], bands: list[list[int]]) -> list[float]:
    return [max(values[i] for i in band) for band in bands]


def _precondition(requires: str, holds: Callable[[], bool]) -> dict[str, Any]:
    """Symbolic precondition outcome; holds is None when undecided"""
    try:
        outcome: Optional[bool] = holds()
    except (Undecided, DepthExceeded) as e:
        logger.debug("precondition %r undecided: %s", requires, e.message)
        outcome = None
    return {"requires": requires, "holds": outcome}


def _infinitely_increasing(f: GermTerm) -> dict[str, Any]:
    return _precondition(
        "infinitely increasing", lambda: classify(f) == GermClass.INF_INCREASING
    )


def _unit(u: GermTerm) -> dict[str, Any]:
    def tends_to_one() -> bool:
        value = limit(u)
        return value.kind == LimitKind.FINITE and value.value == 1

    return _precondition("tends to 1", tends_to_one)


def _guarded(verdict: str, precondition: dict[str, Any]) -> str:
    return INCONCLUSIVE if precondition["holds"] is False else verdict


# ---------------------------------------------------------------------------
# Angle positivity and half-boundedness
# ---------------------------------------------------------------------------


def check_angle_positive(f: GermTerm, spec: Any, params: CheckParams) -> CheckReport:
    """sign(arg f(x)) == sign(arg x) at every sample"""
    precondition = _infinitely_increasing(f)
    s = _sample(f, spec, params)
    nonzero = [abs(x.arg) for x in s.points if x.arg != 0]
    tolerance = params.thresholds.angle_tolerance * (min(nonzero) if nonzero else 1.0)

    witnesses = []
    ratios = []
    for x, y in zip(s.points, s.values):
        if x.arg == 0:
            if abs(y.arg) > tolerance:
                witnesses.append(_witness(x, y, reason="real sample left the axis"))
            continue
        ratio = y.arg / x.arg
        ratios.append(abs(ratio))
        if ratio <= 0:
            witnesses.append(_witness(x, y, reason="argument changed sign"))

    verdict = _guarded(FAIL if witnesses else PASS, precondition)
    max_arg = max(abs(y.arg) for y in s.values)
    return CheckReport(
        "angle_positive",
        verdict,
        len(s.points),
        statistic=min(ratios) if ratios else None,
        witnesses=witnesses[:10],
        details={
            "max_ratio": max(ratios) if ratios else None,
            "max_abs_arg": max_arg,
            "avoids_negative_axis": max_arg < math.pi,
            "tolerance": tolerance,
            "precondition": precondition,
        },
        rows=s.rows(),
    )


def check_half_bounded(f: GermTerm, spec: Any, params: CheckParams) -> CheckReport:
    """Either |f| or |1/f| has non-increasing band maxima"""
    s = _sample(f, spec, params)
    bands = _bands(s.points, params.thresholds.n_bands)
    slack = math.log(params.thresholds.band_factor)

    sides = {}
    for side, sign in (("f", 1.0), ("1/f", -1.0)):
        maxima = _band_maxima([sign * y.logmod for y in s.values], bands)
        growing = [
            b for b in range(1, len(maxima)) if maxima[b] > maxima[b - 1] + slack
        ]
        sides[side] = (maxima, growing)

    bounded = [side for side, (_, growing) in sides.items() if not growing]
    witnesses = []
    if bounded:
        side = bounded[0]
        statistic = math.exp(min(max(sides[side][0]), 700.0))
        verdict = PASS
    else:
        side = None
        statistic = None
        verdict = FAIL
        for name, (maxima, growing) in sides.items():
            band = bands[growing[0]]
            i = max(band, key=lambda j: (1 if name == "f" else -1) * s.values[j].logmod)
            witnesses.append(_witness(s.points[i], s.values[i], side=name))
    return CheckReport(
        "half_bounded",
        verdict,
        len(s.points),
        statistic=statistic,
        witnesses=witnesses,
        details={
            "bounded_side": side,
            "band_log_maxima": {name: maxima for name, (maxima, _) in sides.items()},
        },
        rows=s.rows(),
    )


# ---------------------------------------------------------------------------
# Metric properties
# ---------------------------------------------------------------------------


def _pairs(
    indices: list[int], max_pairs: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    total = len(indices) * (len(indices) - 1) // 2
    if total <= max_pairs:
        return list(itertools.combinations(indices, 2))
    chosen = rng.choice(len(indices), size=(max_pairs, 2))
    return [
        (indices[a], indices[b]) for a, b in chosen.tolist() if a != b
    ]


def check_expansive(
    f: GermTerm,
    spec: Any,
    params: CheckParams,
    rng: Optional[np.random.Generator] = None,
) -> CheckReport:
    """a = min d(f(x), f(y)) / d(x, y) over sampled pairs"""
    rng = rng or np.random.default_rng(params.seed)
    precondition = _infinitely_increasing(f)
    s = _sample(f, spec, params)
    best: Optional[tuple[float, int, int]] = None
    pairs = _pairs(list(range(len(s.points))), params.max_pairs, rng)
    for i, j in pairs:
        d = s.points[i].distance(s.points[j])
        if d == 0:
            continue
        ratio = s.values[i].distance(s.values[j]) / d
        if best is None or ratio < best[0]:
            best = (ratio, i, j)
    if best is None:
        return CheckReport(
            "expansive",
            INCONCLUSIVE,
            len(s.points),
            details={"precondition": precondition},
        )
    a, i, j = best
    threshold = params.thresholds.expansive
    verdict = _guarded(PASS if a >= threshold else FAIL, precondition)
    return CheckReport(
        "expansive",
        verdict,
        len(s.points),
        statistic=a,
        witnesses=[
            {"x": s.points[i].to_dict(), "y": s.points[j].to_dict(), "ratio": a}
        ],
        details={
            "pairs": len(pairs),
            "threshold": threshold,
            "precondition": precondition,
        },
        rows=s.rows(),
    )


_NORMALIZATIONS: dict[str, Callable[[float], float]] = {
    "x": lambda logmod: math.exp(logmod),
    "log": lambda logmod: logmod,
    "log_2": lambda logmod: math.log(logmod),
}


def check_dlipschitz(
    u: GermTerm,
    spec: Any,
    params: CheckParams,
    rng: Optional[np.random.Generator] = None,
) -> CheckReport:
    """
    Band maxima of d(u(x), u(y)) / d(x, y) * n(min(|x|, |y|)) stay bounded,
    with n = |x|, log|x| or log log|x| (params.dlipschitz_normalization).
    """
    rng = rng or np.random.default_rng(params.seed)
    precondition = _unit(u)
    s = _sample(u, spec, params)
    normalize = _NORMALIZATIONS[params.dlipschitz_normalization]
    bands = _bands(s.points, params.thresholds.n_bands)
    per_band = max(1, params.max_pairs // max(1, len(bands)))

    maxima = []
    witnesses = []
    for band in bands:
        top = 0.0
        worst = None
        for i, j in _pairs(band, per_band, rng):
            x, y = s.points[i], s.points[j]
            d = x.distance(y)
            if d == 0:
                continue
            ratio = s.values[i].distance(s.values[j]) / d
            value = ratio * normalize(min(x.logmod, y.logmod))
            if value > top:
                top, worst = value, (i, j)
        maxima.append(top)
        if worst is not None:
            witnesses.append(
                {
                    "x": s.points[worst[0]].to_dict(),
                    "y": s.points[worst[1]].to_dict(),
                    "statistic": top,
                }
            )

    factor = params.thresholds.band_factor
    growing = [
        b for b in range(1, len(maxima)) if maxima[b] > factor * maxima[b - 1]
    ]
    verdict = _guarded(FAIL if growing else PASS, precondition)
    return CheckReport(
        "dlipschitz",
        verdict,
        len(s.points),
        statistic=max(maxima) if maxima else None,
        witnesses=[witnesses[b] for b in growing if b < len(witnesses)][:5],
        details={
            "normalization": params.dlipschitz_normalization,
            "band_maxima": maxima,
            "band_factor": factor,
            "precondition": precondition,
        },
        rows=s.rows(),
    )


# ---------------------------------------------------------------------------
# Image class, units and argument distortion
# ---------------------------------------------------------------------------


def _bound_at(g: GermTerm, logmod: float, precision: int) -> float:
    ctx = real_context(precision)
    return float(evaluate_real(g, ctx.exp(ctx.mpf(logmod)), precision))


def check_image_class(
    f: GermTerm,
    spec: Any,
    target_bounds: tuple[GermTerm, GermTerm],
    params: CheckParams,
) -> CheckReport:
    """
    Every image point lies in U_g2, and in some radial band the images of
    the outermost samples lie outside U_g1.
    """
    g1, g2 = target_bounds
    s = _sample(f, spec, params)
    bands = _bands(s.points, params.thresholds.n_bands)
    precision = params.precision_bits

    witnesses = []
    ratios = []
    for x, y in zip(s.points, s.values):
        upper = _bound_at(g2, y.logmod, precision)
        ratios.append(abs(y.arg) / upper)
        if not abs(y.arg) < upper:
            witnesses.append(_witness(x, y, reason="image outside the upper domain"))

    outer_by_logmod: dict[float, float] = {}
    for x in s.points:
        outer_by_logmod[x.logmod] = max(outer_by_logmod.get(x.logmod, 0.0), abs(x.arg))

    lower_bands = []
    for band in bands:
        boundary = [
            i
            for i in band
            if s.points[i].arg != 0
            and abs(s.points[i].arg) == outer_by_logmod[s.points[i].logmod]
        ]
        lower_bands.append(
            bool(boundary)
            and all(
                abs(s.values[i].arg) > _bound_at(g1, s.values[i].logmod, precision)
                for i in boundary
            )
        )

    if not any(lower_bands):
        witnesses.append({"reason": "no band reaches beyond the lower domain"})
    verdict = FAIL if witnesses else PASS
    return CheckReport(
        "image_class",
        verdict,
        len(s.points),
        statistic=max(ratios) if ratios else None,
        witnesses=witnesses[:10],
        details={
            "lower": format_term(g1),
            "upper": format_term(g2),
            "lower_bands": lower_bands,
        },
        rows=s.rows(),
    )


def check_unit_at_infinity(u: GermTerm, spec: Any, params: CheckParams) -> CheckReport:
    """Band maxima of d(u(x), 1) decrease from band to band"""
    s = _sample(u, spec, params)
    bands = _bands(s.points, params.thresholds.n_bands)
    distances = [distance_to_one(y) for y in s.values]
    maxima = _band_maxima(distances, bands)
    decay = params.thresholds.unit_decay

    if max(maxima) <= 1e-12:
        verdict, stalled = PASS, []
    else:
        stalled = [
            b for b in range(1, len(maxima)) if maxima[b] > (1 - decay) * maxima[b - 1]
        ]
        verdict = FAIL if stalled else PASS

    witnesses = []
    for b in stalled[:5]:
        i = max(bands[b], key=lambda j: distances[j])
        witnesses.append(_witness(s.points[i], s.values[i], distance=distances[i]))
    return CheckReport(
        "unit_at_infinity",
        verdict,
        len(s.points),
        statistic=maxima[-1],
        witnesses=witnesses,
        details={"band_maxima": maxima, "decay": decay},
        rows=s.rows(),
    )


def check_arg_distortion(
    f: GermTerm, u: GermTerm, spec: Any, params: CheckParams
) -> CheckReport:
    """
    |arg f(x)| / 2 <= |arg (f*u)(x)| <= 3/2 * |arg f(x)| for |x| beyond a radius.

    Without params.distortion_radius the radius is the smallest sampled
    modulus beyond which every sample satisfies the bound; the check fails
    when that leaves fewer than half of the radial levels.
    """
    fs = _sample(f, spec, params)
    us = evaluate_points(u, fs.points, params.precision_bits)

    def holds(i: int) -> bool:
        phi = abs(fs.values[i].arg)
        product = abs(fs.values[i].arg + us[i].arg)
        slack = 1e-12 * max(1.0, phi)
        return phi / 2 - slack <= product <= 1.5 * phi + slack

    logmods = sorted({p.logmod for p in fs.points})
    failing = {fs.points[i].logmod for i in range(len(fs.points)) if not holds(i)}

    if params.distortion_radius is not None:
        start = math.log(params.distortion_radius)
        checked = [m for m in logmods if m >= start]
        bad = [m for m in checked if m in failing]
        verdict = PASS if checked and not bad else FAIL
    else:
        after_last_failure = [
            m for m in logmods if not any(f_ >= m for f_ in failing)
        ]
        checked = after_last_failure
        start = checked[0] if checked else math.inf
        verdict = PASS if len(checked) * 2 >= len(logmods) else FAIL

    witnesses = [
        _witness(fs.points[i], fs.values[i], unit=us[i].to_dict())
        for i in range(len(fs.points))
        if fs.points[i].logmod >= start and not holds(i)
    ]
    if verdict == FAIL and not witnesses:
        witnesses = [
            _witness(fs.points[i], fs.values[i], unit=us[i].to_dict())
            for i in range(len(fs.points))
            if not holds(i)
        ]
    rows = fs.rows()
    for row, value in zip(rows, us):
        row["unit_logmod"], row["unit_arg"] = value.logmod, value.arg
    return CheckReport(
        "arg_distortion",
        verdict,
        len(fs.points),
        statistic=math.exp(start) if math.isfinite(start) else None,
        witnesses=witnesses[:10],
        details={"radius_logmod": start if math.isfinite(start) else None},
        rows=rows,
    )
