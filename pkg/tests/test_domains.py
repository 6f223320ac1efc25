"""Real domains, nu-maps, standard domains and translation sandwiches"""

from fractions import Fraction

import pytest

from germcalc.asymptotics import alevel
from germcalc.core.errors import DomainError, NotInfinitelyIncreasing
from germcalc.domains import (
    DomainSpec,
    angle_bounded,
    domain_class,
    domain_class_from_witnesses,
    is_standard,
    nu_exp_class,
    nu_log_class,
    nu_mr,
    nu_pr,
    translate_sandwich,
)
from germcalc.terms import parse, simplify


class TestDomainClass:
    @pytest.mark.parametrize("h, k", [("pi/2", 0), ("1/x", 1), ("x", -1)])
    def test_class_is_angular_level(self, budget, h, k):
        result = domain_class(DomainSpec(parse(h)), budget)
        assert result.k == k
        assert result.to_dict()["witnesses"] is not None

    def test_witnesses_with_equal_levels(self, budget):
        result = domain_class_from_witnesses(parse("1/(2*x)"), parse("1/x"), budget)
        assert result.k == 1

    def test_witnesses_out_of_order(self, budget):
        with pytest.raises(DomainError):
            domain_class_from_witnesses(parse("1/x"), parse("1/(2*x)"), budget)

    def test_witnesses_with_different_levels(self, budget):
        with pytest.raises(DomainError):
            domain_class_from_witnesses(parse("1/x"), parse("pi/2"), budget)

    def test_negative_base_radius(self):
        with pytest.raises(ValueError):
            DomainSpec(parse("pi/4"), -1.0)


class TestNuMaps:
    def test_scaling(self):
        assert nu_mr(parse("1/x"), Fraction(2)) == simplify(parse("2/x"))

    def test_scaling_fixes_constants(self):
        assert nu_mr(parse("pi/2"), Fraction(5)) == simplify(parse("pi/2"))

    def test_scaling_log_bound(self, budget):
        scaled = nu_mr(parse("1/log(x)"), Fraction(3))
        assert alevel(scaled, budget) == alevel(parse("1/log(x)"), budget)

    def test_power_map(self):
        assert nu_pr(parse("1/x"), Fraction(2)) == simplify(parse("2/x^(1/2)"))

    def test_power_map_on_constant(self):
        assert nu_pr(parse("pi/4"), Fraction(3)) == simplify(parse("3*pi/4"))

    def test_power_map_on_log_bound(self):
        assert nu_pr(parse("1/log(x)"), Fraction(3)) == simplify(parse("9/log(x)"))

    def test_nonpositive_factor(self):
        with pytest.raises(DomainError):
            nu_mr(parse("1/x"), Fraction(0))

    @pytest.mark.parametrize("h", ["1/x", "pi/2", "1/log(x)", "exp(-x)", "x"])
    @pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(3)])
    def test_maps_keep_angular_level(self, budget, h, r):
        k = alevel(parse(h), budget)
        assert alevel(nu_mr(parse(h), r), budget) == k
        assert alevel(nu_pr(parse(h), r), budget) == k


class TestLogAndExp:
    @pytest.mark.parametrize("h, k", [("x", 0), ("pi/2", 1), ("1/x", 2)])
    def test_nu_log_class(self, budget, h, k):
        assert nu_log_class(parse(h), budget).germ_class == k

    def test_nu_log_template(self, budget):
        template = nu_log_class(parse("1/x"), budget)
        assert template.asymptotic_form.endswith("∘exp(x·u)")

    @pytest.mark.parametrize("h, k", [("1/x", 0), ("1/exp(x)", 1), ("pi/4", -1)])
    def test_nu_exp_class(self, budget, h, k):
        assert nu_exp_class(parse(h), budget) == k


class TestStandardDomains:
    @pytest.mark.parametrize(
        "h, expected", [("pi/4", True), ("x", False), ("pi/2 - 1/x", True)]
    )
    def test_standard(self, budget, h, expected):
        assert is_standard(parse(h), budget) is expected

    def test_limit_above_right_angle(self, budget):
        assert is_standard(parse("pi"), budget) is False

    @pytest.mark.parametrize(
        "h, expected", [("pi/2", True), ("x", False), ("log(x)", False)]
    )
    def test_angle_bounded(self, budget, h, expected):
        assert angle_bounded(parse(h), budget) is expected


class TestTranslation:
    def test_identity_bound(self, budget):
        lower, upper = translate_sandwich(parse("x"), Fraction(1), budget)
        assert simplify(lower) == simplify(parse("x - 1"))
        assert simplify(upper) == simplify(parse("x + 1"))

    def test_log_bound(self, budget):
        lower, upper = translate_sandwich(parse("log(x)"), Fraction(1), budget)
        assert lower == parse("log(x - 1)")
        assert upper == parse("log(x + 1)")

    def test_preserves_angular_level(self, budget):
        h = parse("x*log(x)")
        lower, upper = translate_sandwich(h, Fraction(1, 2), budget)
        assert alevel(lower, budget) == alevel(upper, budget) == alevel(h, budget)

    def test_requires_increasing_bound(self, budget):
        with pytest.raises(NotInfinitelyIncreasing):
            translate_sandwich(parse("1/x"), Fraction(1), budget)
