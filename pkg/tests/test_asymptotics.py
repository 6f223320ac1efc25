"""Limits, dominance, level, exponential height and angular level"""

import importlib
import math

import pytest
import sympy

from germcalc.asymptotics import (
    NEG_INF,
    EhValue,
    GermClass,
    LimitKind,
    Relation,
    alevel,
    classify,
    compare,
    continuation_profile,
    decompose_ub,
    eh,
    eh_components,
    inverse_eh_bound,
    inverse_level,
    is_simple,
    level,
    limit,
    lm,
)
from germcalc.core.errors import (
    NotInfinitelyIncreasing,
    PositivityError,
    Undecided,
)
from germcalc.terms import format_term, parse, simplify

level_module = importlib.import_module("germcalc.asymptotics.level")


class TestClassify:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x + exp(-x)", GermClass.INF_INCREASING),
            ("1/log(x)", GermClass.SMALL_POSITIVE),
            ("exp(log(x)) - x", GermClass.ZERO),
            ("x - x^2", GermClass.INF_DECREASING),
            ("2 - 1/x", GermClass.FINITE_POSITIVE),
            ("-exp(-x)", GermClass.SMALL_NEGATIVE),
        ],
    )
    def test_classes(self, budget, text, expected):
        assert classify(parse(text), budget) == expected


class TestLimit:
    def test_finite_irrational_limit(self, budget):
        value = limit(parse("exp(1 + 1/x)"), budget)
        assert value.kind == LimitKind.FINITE
        assert value.sign == 1
        lo, hi = value.enclosure
        assert lo <= sympy.E <= hi

    def test_exact_finite_limit(self, budget):
        value = limit(parse("x/(x + 1)"), budget)
        assert value.kind == LimitKind.FINITE
        assert value.value == 1

    def test_pi_squared_limit(self, budget):
        value = limit(parse("pi*x*pi/x"), budget)
        assert value.kind == LimitKind.FINITE
        assert value.value == sympy.pi**2
        assert value.exact is None
        lo, hi = value.enclosure
        assert lo <= sympy.pi**2 <= hi

    def test_cancellation(self, budget):
        assert limit(parse("x - x"), budget).kind == LimitKind.ZERO

    def test_infinite_limits(self, budget):
        assert limit(parse("x*log(x)"), budget).kind == LimitKind.PLUS_INFINITY
        assert limit(parse("-exp(x)"), budget).kind == LimitKind.MINUS_INFINITY

    def test_zero_limit(self, budget):
        assert limit(parse("log(x)/x"), budget).kind == LimitKind.ZERO

    def test_json_form(self, budget):
        data = limit(parse("x/(x + 1)"), budget).to_dict()
        assert data["kind"] == "FiniteNonzero"
        assert data["sign"] == 1
        assert data["exact"] == "1"


class TestCompare:
    def test_polynomial_below_exponential(self, budget):
        result = compare(parse("x"), parse("exp(x)"), budget)
        assert result.relation == Relation.PRECEDES

    def test_identity(self, budget):
        result = compare(parse("x*log(x)"), parse("x*log(x)"), budget)
        assert result.relation == Relation.ASYMPTOTIC
        assert result.ratio.kind == LimitKind.FINITE

    def test_iterated_logs(self, budget):
        result = compare(parse("log(x)/log_3(x)"), parse("sqrt(log(x))"), budget)
        assert result.relation == Relation.DOMINATES


class TestLeadingMonomial:
    def test_dominant_summand(self, budget):
        lead = lm(parse("x + exp(-x)"), budget)
        assert lead.coefficient.value == 1
        assert lead.monomial.text == "x"

    def test_monomial_times_constant(self, budget):
        lead = lm(parse("3*x^2*log(x)"), budget)
        assert lead.coefficient.value == 3
        assert lead.monomial.log_depth == 1

    def test_product_with_exponential(self, budget):
        lead = lm(parse("(x + 1)*exp(x)"), budget)
        assert lead.coefficient.value == 1
        assert simplify(lead.monomial.term()) == simplify(parse("x*exp(x)"))


class TestLevel:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x + exp(-x)", 0),
            ("exp(x)", 1),
            ("log(x)", -1),
            ("x^2", 0),
            ("exp_2(x)", 2),
            ("log_2(x)", -2),
            ("(log(x)/log_3(x))*(1/log(x))", -3),
            ("exp(log(x)/log_2(x))", 0),
            ("1/x", 0),
        ],
    )
    def test_values(self, budget, text, expected):
        assert level(parse(text), budget) == expected

    def test_constant_has_minus_infinite_level(self, budget):
        assert level(parse("2 + 1/x"), budget) == NEG_INF

    def test_requires_positive_germ(self, budget):
        with pytest.raises(PositivityError):
            level(parse("-x"), budget)

    def test_composition_adds_levels(self, budget):
        f, g = parse("exp(x)*x"), parse("log(x)^2")
        composed = parse("(exp(x)*x)(log(x)^2)")
        assert level(composed, budget) == level(f, budget) + level(g, budget)

    def test_no_state_survives_a_call(self, budget):
        def cached():
            return {
                name: len(value)
                for name, value in vars(level_module).items()
                if isinstance(value, dict) and not name.startswith("__")
            }

        before = cached()
        assert level(parse("exp_2(x)*log(x)"), budget) == 2
        assert cached() == before


class TestExponentialHeight:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x + exp(-x)", 1),
            ("x*log(x)", 0),
            ("exp(x + exp(-x))", 1),
            ("exp(x)", 1),
            ("log(x)", -1),
            ("x", 0),
            ("exp_2(x)", 2),
        ],
    )
    def test_exact_values(self, budget, text, expected):
        value = eh(parse(text), budget)
        assert value.is_exact
        assert value.value == expected

    def test_constant(self, budget):
        assert eh(parse("5"), budget).value == NEG_INF

    def test_json_forms(self, budget):
        assert eh(parse("x + exp(-x)"), budget).to_dict() == {"exact": 1}
        assert eh(parse("7"), budget).to_dict() == {"exact": "-inf"}

    def test_shift_by_exp_and_log(self, budget):
        f = parse("x*log(x) + log(x)^2")
        e = eh(f, budget).value
        assert eh(parse("(x*log(x) + log(x)^2)(exp(x))"), budget).value == e + 1
        assert eh(parse("(x*log(x) + log(x)^2)(log(x))"), budget).value == e - 1

    def test_range_value_is_undecided(self):
        with pytest.raises(Undecided):
            EhValue(0, 2).value


class TestComponents:
    def test_split_by_height(self, budget):
        parts = eh_components(parse("x + exp(-x)"), budget)
        assert sorted(parts) == [0, 1]
        assert format_term(parts[0]) == "x"
        assert format_term(parts[1]) == "exp(-x)"

    def test_constant_component(self, budget):
        parts = eh_components(parse("log(x) + 5"), budget)
        assert set(parts) == {-1, NEG_INF}
        assert format_term(parts[NEG_INF]) == "5"

    def test_single_component(self, budget):
        assert eh_components(parse("x"), budget) == {0: parse("x")}


class TestDecompose:
    def test_explicit_split(self, budget):
        large, bounded = decompose_ub(parse("x + 1 + 1/x"), budget)
        assert simplify(large) == parse("x")
        assert simplify(bounded) == simplify(parse("1 + 1/x"))

    def test_bounded_germ(self, budget):
        large, bounded = decompose_ub(parse("1/log(x)"), budget)
        assert simplify(large) == simplify(parse("0"))
        assert simplify(bounded) == simplify(parse("1/log(x)"))


class TestAngularLevel:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("1/x", 1),
            ("1/exp(x)", 2),
            ("pi/4", 0),
            ("2", 0),
            ("x", -1),
            ("x^2", -1),
            ("sqrt(log(x))", 0),
            ("1/log(x)", 0),
        ],
    )
    def test_values(self, budget, text, expected):
        assert alevel(parse(text), budget) == expected


class TestSimpleGerms:
    @pytest.mark.parametrize(
        "text, expected",
        [("exp(x)", True), ("x + exp(-x)", False), ("x^(1/2)", True)],
    )
    def test_simple(self, budget, text, expected):
        assert is_simple(parse(text), budget) is expected

    @pytest.mark.parametrize(
        "args, expected", [((1, 1, 1), 0), ((0, 0, 0), 0), ((2, 1, 0), 3)]
    )
    def test_inverse_bound(self, args, expected):
        assert inverse_eh_bound(*args) == expected

    @pytest.mark.parametrize("level_f, expected", [(1, -1), (0, 0), (-2, 2)])
    def test_inverse_level(self, level_f, expected):
        assert inverse_level(level_f) == expected


class TestContinuationProfile:
    def test_exponential(self, budget):
        profile = continuation_profile(parse("exp(x)"), budget)
        assert (profile.eh, profile.level, profile.eta) == (1, 1, 1)
        assert profile.source_class == 0
        assert profile.image_class == -1

    def test_power(self, budget):
        profile = continuation_profile(parse("x^2"), budget)
        assert (profile.eh, profile.level, profile.eta) == (0, 0, 0)
        assert profile.to_dict()["lambda"] == 0

    def test_needs_increasing_germ(self, budget):
        with pytest.raises(NotInfinitelyIncreasing):
            continuation_profile(parse("1/x"), budget)


def test_limit_enclosure_is_tight(budget):
    lo, hi = limit(parse("exp(1 + 1/x)"), budget).enclosure
    assert math.isclose(float(lo), math.e, rel_tol=1e-12)
    assert math.isclose(float(hi), math.e, rel_tol=1e-12)
