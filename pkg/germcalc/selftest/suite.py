"""
Acceptance suite behind ``germcalc selftest``.

Each group runs a reduced version of one acceptance check and yields one
CaseResult per case. Cases the engine cannot decide (Undecided,
DepthExceeded) are skipped, never failed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import numpy as np

from ..asymptotics.height import eh, inverse_eh_bound
from ..asymptotics.level import alevel, inverse_level, level
from ..asymptotics.limits import LimitKind, compare, limit
from ..core.config import Budget, CheckParams, get_settings
from ..core.errors import (
    DepthExceeded,
    EvaluationError,
    GermcalcError,
    NoSandwichFound,
    PrecisionExhausted,
    Undecided,
)
from ..domains.real_domains import (
    DomainSpec,
    nu_mr,
    nu_pr,
    translate_sandwich,
)
from ..lchart.checks import (
    check_angle_positive,
    check_arg_distortion,
    check_dlipschitz,
    check_expansive,
    check_half_bounded,
    check_unit_at_infinity,
)
from ..oracle.corpus import generate_terms, load_corpus
from ..oracle.numeric import (
    OracleEstimate,
    numeric_compare,
    numeric_level,
    numeric_limit,
)
from ..terms.nodes import (
    X_TERM,
    Add,
    Exp,
    GermTerm,
    Log,
    Mul,
    Recip,
    const,
    substitute,
)
from ..terms.parser import parse
from ..terms.printer import format_term

logger = logging.getLogger(__name__)

PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"

UNDECIDABLE = (Undecided, DepthExceeded)


@dataclass
class CaseResult:
    name: str
    status: str
    detail: str = ""

    def to_dict(self) -> dict[str, str]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class SuiteContext:
    budget: Budget
    params: CheckParams
    rng: np.random.Generator
    # number of random trials per property group
    trials: int = 10
    # generated terms cross-checked against the numeric oracle
    oracle_terms: int = 500


Group = Callable[[SuiteContext], Iterator[CaseResult]]


def _case(name: str, check: Callable[[], Optional[str]]) -> CaseResult:
    """Run one check; it returns None on success or a failure description"""
    try:
        problem = check()
    except UNDECIDABLE as e:
        return CaseResult(name, SKIPPED, e.message)
    except GermcalcError as e:
        return CaseResult(name, FAILED, f"{e.code}: {e.message}")
    if problem:
        return CaseResult(name, FAILED, problem)
    return CaseResult(name, PASSED)


def _expect(actual: object, expected: object) -> Optional[str]:
    if actual == expected:
        return None
    return f"expected {expected}, got {actual}"


# ---------------------------------------------------------------------------
# Exact values
# ---------------------------------------------------------------------------

KNOWN_VALUES: list[tuple[str, str, object]] = [
    ("eh", "x + exp(-x)", 1),
    ("level", "x + exp(-x)", 0),
    ("level", "exp(x)", 1),
    ("level", "log(x)", -1),
    ("level", "x^2", 0),
    ("level", "x^(1/2)", 0),
    ("level", "(log(x)/log_3(x))*(1/log(x))", -3),
    ("alevel", "1/x", 1),
    ("alevel", "1/exp(x)", 2),
    ("alevel", "2", 0),
    ("alevel", "x", -1),
    ("alevel", "sqrt(log(x))", 0),
    ("eh", "exp(x + exp(-x))", 1),
    ("eh", "exp(x)", 1),
    ("eh", "log(x)", -1),
    ("eh", "x", 0),
    ("level", "exp_2(x)", 2),
]


def known_values(ctx: SuiteContext) -> Iterator[CaseResult]:
    operations: dict[str, Callable[[GermTerm], object]] = {
        "eh": lambda f: eh(f, ctx.budget).value,
        "level": lambda f: level(f, ctx.budget),
        "alevel": lambda f: alevel(f, ctx.budget),
    }
    for op, text, expected in KNOWN_VALUES:
        yield _case(
            f"{op}({text})", lambda: _expect(operations[op](parse(text)), expected)
        )


# ---------------------------------------------------------------------------
# Level and eh laws on random terms
# ---------------------------------------------------------------------------


def level_identities(ctx: SuiteContext) -> Iterator[CaseResult]:
    fs = generate_terms(ctx.rng, ctx.trials, max_depth=3, max_tower=2, kind="large")
    gs = generate_terms(ctx.rng, ctx.trials, max_depth=3, max_tower=2, kind="large")
    for f, g in zip(fs, gs):

        def check(f: GermTerm = f, g: GermTerm = g) -> Optional[str]:
            lf, lg = level(f, ctx.budget), level(g, ctx.budget)
            composed = level(substitute(f, g), ctx.budget)
            if composed != lf + lg:
                return f"level(f o g) = {composed}, expected {lf + lg}"
            top = max(lf, lg)
            for label, combined in (("f*g", Mul((f, g))), ("f+g", Add((f, g)))):
                value = level(combined, ctx.budget)
                if value != top:
                    return f"level({label}) = {value}, expected {top}"
            scaled = level(Mul((f, Add((const(1), Recip(g))))), ctx.budget)
            if scaled != lf:
                return f"level(f*(1 + 1/g)) = {scaled}, expected {lf}"
            return None

        yield _case(f"level laws f={format_term(f)} g={format_term(g)}", check)


def eh_shift_laws(ctx: SuiteContext) -> Iterator[CaseResult]:
    terms = generate_terms(ctx.rng, ctx.trials, max_depth=3, max_tower=2, kind="large")
    for f in terms:

        def check(f: GermTerm = f) -> Optional[str]:
            height = eh(f, ctx.budget)
            if not height.is_exact:
                raise Undecided(f"eh of {format_term(f)} is a range")
            e = height.value
            shifted = eh(substitute(f, Exp(X_TERM)), ctx.budget).value
            if shifted != e + 1:
                return f"eh(f o exp) = {shifted}, expected {e + 1}"
            lowered = eh(substitute(f, Log(X_TERM)), ctx.budget).value
            if lowered != e - 1:
                return f"eh(f o log) = {lowered}, expected {e - 1}"
            inverted = eh(Recip(f), ctx.budget).value
            if inverted != e:
                return f"eh(1/f) = {inverted}, expected {e}"
            if level(Recip(f), ctx.budget) != level(f, ctx.budget):
                return "level(1/f) differs from level(f)"
            if level(f, ctx.budget) > e:
                return f"level(f) exceeds eh(f) = {e}"
            return None

        yield _case(f"eh laws f={format_term(f)}", check)


# ---------------------------------------------------------------------------
# Oracle cross-check
# ---------------------------------------------------------------------------

_KINDS = {
    "+inf": LimitKind.PLUS_INFINITY,
    "-inf": LimitKind.MINUS_INFINITY,
    0: LimitKind.ZERO,
}


def limit_agrees(f: GermTerm, budget: Budget) -> Optional[str]:
    """None when the engine's limit matches a confirmed numeric estimate"""
    estimate = _confirmed(lambda: numeric_limit(f, precision=budget.precision_bits))
    value = limit(f, budget)
    expected = _KINDS.get(estimate.value, LimitKind.FINITE)
    if value.kind != expected:
        return f"engine {value.kind.value}, oracle {estimate.value}"
    if expected == LimitKind.FINITE:
        assert value.enclosure is not None
        centre = float((value.enclosure[0] + value.enclosure[1]) / 2)
        if not math.isclose(centre, float(estimate.value), rel_tol=1e-4):
            return f"engine {centre}, oracle {estimate.value}"
    return None


def level_agrees(f: GermTerm, budget: Budget) -> Optional[str]:
    """None when level(f) matches a confirmed sandwich estimate"""
    if limit(f, budget).kind != LimitKind.PLUS_INFINITY:
        raise Undecided(f"{format_term(f)} is not infinitely increasing")
    estimate = _confirmed(lambda: numeric_level(f, precision=budget.precision_bits))
    return _expect(level(f, budget), estimate.value)


def compare_agrees(f: GermTerm, g: GermTerm, budget: Budget) -> Optional[str]:
    """None when the engine's dominance matches a confirmed ratio trend"""
    estimate = _confirmed(
        lambda: numeric_compare(f, g, precision=budget.precision_bits)
    )
    return _expect(compare(f, g, budget).relation.value, estimate.value)


def _confirmed(estimate: Callable[[], OracleEstimate]) -> OracleEstimate:
    try:
        result = estimate()
    except (PrecisionExhausted, EvaluationError, NoSandwichFound) as e:
        raise Undecided(f"oracle: {e.message}")
    if not result.confirmed:
        raise Undecided(f"oracle {result.quantity} estimate is weak")
    return result


def oracle_equivalence(ctx: SuiteContext) -> Iterator[CaseResult]:
    budget = ctx.budget
    for f in load_corpus():
        yield _case(f"limit {format_term(f)}", lambda f=f: limit_agrees(f, budget))

    for text, expected in (("exp(x)", 1), ("log(x)", -1), ("x*log(x)", 0)):
        yield _case(
            f"oracle level {text}",
            lambda t=text, e=expected: _expect(
                _confirmed(lambda: numeric_level(parse(t))).value, e
            ),
        )
    for f, g, relation in (("x", "exp(x)", "≺"), ("x + 1", "x", "≍")):
        yield _case(
            f"oracle cmp {f}, {g}",
            lambda f=f, g=g, r=relation: _expect(
                numeric_compare(parse(f), parse(g)).value, r
            ),
        )

    terms = generate_terms(ctx.rng, ctx.oracle_terms, max_depth=5, max_tower=3)
    for f in terms:
        name = format_term(f)
        yield _case(f"random limit {name}", lambda f=f: limit_agrees(f, budget))
        yield _case(f"random level {name}", lambda f=f: level_agrees(f, budget))
    for f, g in zip(terms, terms[1:]):
        yield _case(
            f"random cmp {format_term(f)}, {format_term(g)}",
            lambda f=f, g=g: compare_agrees(f, g, budget),
        )


# ---------------------------------------------------------------------------
# Inverses
# ---------------------------------------------------------------------------

INVERSE_PAIRS = [
    ("x^2", "x^(1/2)"),
    ("x^3", "x^(1/3)"),
    ("exp(x)", "log(x)"),
    ("2*x", "x/2"),
    ("log(x)", "exp(x)"),
]
INVERSE_TARGETS = ["x", "log(x)", "exp(x)", "x^2", "x*log(x)"]


def inverse_bounds(ctx: SuiteContext) -> Iterator[CaseResult]:
    for f_text, inverse_text in INVERSE_PAIRS:
        for g_text in INVERSE_TARGETS:

            def check(f_text: str = f_text, inv: str = inverse_text, g: str = g_text):
                f, f_inverse, g_term = parse(f_text), parse(inv), parse(g)
                eh_f = int(eh(f, ctx.budget).value)
                level_f = int(level(f, ctx.budget))
                eh_g = int(eh(g_term, ctx.budget).value)
                bound = inverse_eh_bound(eh_g, eh_f, level_f)
                actual = eh(substitute(g_term, f_inverse), ctx.budget).value
                if actual > bound:
                    return f"eh(g o f^-1) = {actual} exceeds {bound}"
                return _expect(level(f_inverse, ctx.budget), inverse_level(level_f))

            yield _case(f"inverse f={f_text} g={g_text}", check)


# ---------------------------------------------------------------------------
# Continuation checks
# ---------------------------------------------------------------------------


def _params(ctx: SuiteContext, **update: object) -> CheckParams:
    return ctx.params.model_copy(update=update)


def _domain(text: str) -> DomainSpec:
    return DomainSpec(parse(text))


def expansiveness(ctx: SuiteContext) -> Iterator[CaseResult]:
    def square() -> Optional[str]:
        report = check_expansive(parse("x^2"), _domain("pi/4"), ctx.params, ctx.rng)
        assert report.statistic is not None
        if abs(report.statistic - 2) > 1e-10:
            return f"expansion ratio of x^2 is {report.statistic}"
        return None

    def exponential() -> Optional[str]:
        report = check_expansive(
            parse("exp(x)"), _domain("pi/2"), ctx.params, ctx.rng
        )
        if report.statistic is None or report.statistic < 0.05:
            return f"expansion ratio of exp is {report.statistic}"
        return None

    yield _case("expansive x^2", square)
    yield _case("expansive exp", exponential)


def angle_positivity(ctx: SuiteContext) -> Iterator[CaseResult]:
    params = _params(ctx, start_radius=100.0)
    for text, bound in (
        ("x^2", "pi/4"),
        ("x^(3/2)", "pi/4"),
        ("x*log(x)", "pi/2 - 1/10"),
        ("exp(x)", "pi/2"),
    ):

        def check(text: str = text, bound: str = bound) -> Optional[str]:
            report = check_angle_positive(parse(text), _domain(bound), params)
            if not report.passed:
                return f"witnesses {report.witnesses[:2]}"
            if text == "x^(3/2)":
                if not report.details["max_ratio"] < 2:
                    return f"max ratio {report.details['max_ratio']}"
                if not report.details["avoids_negative_axis"]:
                    return "image meets the negative axis"
            return None

        yield _case(f"angle-positive {text}", check)


def unit_behaviour(ctx: SuiteContext) -> Iterator[CaseResult]:
    for text in ("1 + 1/x", "(1 + 1/x)/(1 + 2/x)"):
        u = parse(text)
        yield _case(
            f"unit {text}",
            lambda u=u: _verdict(
                check_unit_at_infinity(u, _domain("pi/4"), ctx.params)
            ),
        )
        yield _case(
            f"dlipschitz {text}",
            lambda u=u: _verdict(
                check_dlipschitz(u, _domain("pi/4"), ctx.params, ctx.rng)
            ),
        )
    yield _case(
        "arg-distortion x^2, 1 + 1/x",
        lambda: _verdict(
            check_arg_distortion(
                parse("x^2"),
                parse("1 + 1/x"),
                _domain("pi/4"),
                _params(ctx, start_radius=100.0),
            )
        ),
    )


def half_boundedness(ctx: SuiteContext) -> Iterator[CaseResult]:
    params = _params(ctx, arg_cap=4 * math.pi)
    for text in ("x", "x*log(x)", "x^(1/2)", "log(x)", "1/log(x)", "x/log(x)^2"):
        yield _case(
            f"half-bounded {text}",
            lambda t=text: _verdict(check_half_bounded(parse(t), _domain("x"), params)),
        )


def _verdict(report) -> Optional[str]:
    if report.passed:
        return None
    return f"{report.verdict}: statistic {report.statistic}, {report.witnesses[:2]}"


# ---------------------------------------------------------------------------
# Domain calculus
# ---------------------------------------------------------------------------

DOMAIN_BOUNDS = ["1/x", "pi/2", "1/log(x)", "exp(-x)", "1/sqrt(x)", "2 + 1/x"]


def domain_calculus(ctx: SuiteContext) -> Iterator[CaseResult]:
    for text in DOMAIN_BOUNDS:
        for r in (Fraction(2), Fraction(1, 3)):

            def check(text: str = text, r: Fraction = r) -> Optional[str]:
                h = parse(text)
                k = alevel(h, ctx.budget)
                scaled = alevel(nu_mr(h, r), ctx.budget)
                if scaled != k:
                    return f"alevel(nu_mr(h, {r})) = {scaled}, expected {k}"
                return _expect(alevel(nu_pr(h, r), ctx.budget), k)

            yield _case(f"nu-maps h={text} r={r}", check)

    def sandwich() -> Optional[str]:
        h = parse("x*log(x)")
        lower, upper = translate_sandwich(h, Fraction(1), ctx.budget)
        k = alevel(h, ctx.budget)
        return _expect((alevel(lower, ctx.budget), alevel(upper, ctx.budget)), (k, k))

    yield _case("sandwich x*log(x)", sandwich)


GROUPS: dict[str, Group] = {
    "known-values": known_values,
    "level-identities": level_identities,
    "eh-shift-laws": eh_shift_laws,
    "oracle": oracle_equivalence,
    "inverses": inverse_bounds,
    "expansive": expansiveness,
    "angle-positive": angle_positivity,
    "units": unit_behaviour,
    "half-bounded": half_boundedness,
    "domains": domain_calculus,
}


def run_suite(
    groups: Optional[list[str]] = None,
    budget: Optional[Budget] = None,
    params: Optional[CheckParams] = None,
    seed: int = 0,
    trials: int = 10,
    oracle_terms: int = 500,
) -> list[CaseResult]:
    """Run the named groups (all by default) and collect their case results"""
    ctx = SuiteContext(
        budget=budget or get_settings().budget(),
        params=params or CheckParams(),
        rng=np.random.default_rng(seed),
        trials=trials,
        oracle_terms=oracle_terms,
    )
    results = []
    for name in groups or list(GROUPS):
        logger.info("selftest group %s", name)
        for result in GROUPS[name](ctx):
            logger.debug("%s: %s %s", result.name, result.status, result.detail)
            results.append(result)
    return results
