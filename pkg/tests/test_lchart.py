"""Evaluation on the log surface and the sampled continuation checks"""

import math

import numpy as np
import pytest

from germcalc.core.errors import BranchCollision, DomainViolation, UsageError
from germcalc.domains import DomainSpec
from germcalc.lchart import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    LPoint,
    check_angle_positive,
    check_arg_distortion,
    check_dlipschitz,
    check_expansive,
    check_half_bounded,
    check_image_class,
    check_unit_at_infinity,
    distance_to_one,
    eval_along_path,
    evaluate_points,
    real_point,
    sample_domain,
)
from germcalc.terms import parse
from germcalc.terms.numeric import evaluate_real


def domain(text, radius=0.0):
    return DomainSpec(parse(text), radius)


class TestPoints:
    def test_parse(self):
        assert LPoint.parse("1.5:-0.25") == LPoint(1.5, -0.25)

    def test_parse_needs_separator(self):
        with pytest.raises(ValueError):
            LPoint.parse("1.5")

    def test_distance_and_projection(self):
        p = real_point(math.e)
        assert p.logmod == pytest.approx(1.0)
        assert distance_to_one(LPoint(3.0, 4.0)) == pytest.approx(5.0)
        assert LPoint(0.0, math.pi).project() == pytest.approx(complex(-1, 0))

    def test_overflowing_modulus(self):
        assert LPoint(1e6, 0.0).modulus == math.inf


class TestEvaluation:
    def test_square_doubles_chart_coordinates(self):
        (value,) = evaluate_points(parse("x^2"), [LPoint(1.0, 0.3)])
        assert value.logmod == pytest.approx(2.0)
        assert value.arg == pytest.approx(0.6)

    def test_exponential(self):
        (value,) = evaluate_points(parse("exp(x)"), [LPoint(1.0, math.pi / 4)])
        assert value.logmod == pytest.approx(1.9221, abs=1e-4)
        assert value.arg == pytest.approx(1.9221, abs=1e-4)

    def test_logarithm_of_large_real(self):
        (value,) = eval_along_path(parse("log(x)"), [real_point(1e6)])
        assert value.logmod == pytest.approx(math.log(math.log(1e6)))
        assert value.arg == pytest.approx(0.0)

    def test_path_crosses_sheets_continuously(self):
        path = [LPoint(2.0, 0.2 * k) for k in range(40)]
        values = eval_along_path(parse("x^(1/2)"), path)
        assert values[-1].arg == pytest.approx(0.1 * 39)
        assert all(b.arg > a.arg for a, b in zip(values, values[1:]))

    def test_points_are_reached_along_arcs(self):
        points = [LPoint(3.0, 2.5), LPoint(3.0, -2.5), LPoint(3.0, 0.0)]
        values = evaluate_points(parse("x^3"), points)
        assert [v.arg for v in values] == pytest.approx([7.5, -7.5, 0.0])

    def test_empty_path(self):
        assert eval_along_path(parse("x"), []) == []


POSITIVE_GERMS = [
    "x",
    "-(-x)",
    "(1/(-x))*(-1)",
    "(-x)^2",
    "x - 1",
    "x + exp(-x)",
    "exp(x)/x^2",
    "log(x)*x^(1/3)",
]


class TestLift:
    @pytest.mark.parametrize("text", POSITIVE_GERMS)
    def test_real_axis_matches_real_value(self, text):
        f = parse(text)
        (value,) = eval_along_path(f, [real_point(5.0)])
        assert value.arg == pytest.approx(0.0, abs=1e-12)
        assert value.logmod == pytest.approx(math.log(float(evaluate_real(f, 5))))

    def test_negative_germ_lifts_to_half_turn(self):
        (value,) = eval_along_path(parse("1 - x^2"), [real_point(5.0)])
        assert abs(value.arg) == pytest.approx(math.pi)
        assert value.logmod == pytest.approx(math.log(24.0))

    def test_odd_power_of_negation(self):
        (value,) = eval_along_path(parse("(-x)^3"), [real_point(2.0)])
        assert value.arg == pytest.approx(math.pi)

    @pytest.mark.parametrize("text", POSITIVE_GERMS)
    def test_conjugate_points(self, text):
        f = parse(text)
        upper, lower = evaluate_points(f, [LPoint(2.0, 0.7), LPoint(2.0, -0.7)])
        assert lower.logmod == pytest.approx(upper.logmod)
        assert lower.arg == pytest.approx(-upper.arg, abs=1e-12)

    @pytest.mark.parametrize("text", ["x + exp(-x)", "x^(3/2) - x", "exp(x) - x^2"])
    def test_lift_does_not_depend_on_path(self, text):
        f = parse(text)
        outward = [LPoint(u, 0.0) for u in np.linspace(2.0, 3.0, 11)]
        outward += [LPoint(3.0, a) for a in np.linspace(0.0, 0.6, 13)[1:]]
        around = [LPoint(2.0, a) for a in np.linspace(0.0, 0.6, 13)]
        around += [LPoint(u, 0.6) for u in np.linspace(2.0, 3.0, 11)[1:]]
        first = eval_along_path(f, outward)[-1]
        second = eval_along_path(f, around)[-1]
        assert first.logmod == pytest.approx(second.logmod)
        assert first.arg == pytest.approx(second.arg)

    def test_vanishing_sum_is_a_collision(self):
        with pytest.raises(BranchCollision):
            eval_along_path(parse("x - x"), [real_point(3.0)])


class TestSampling:
    def test_grid_arithmetic(self):
        points = sample_domain(domain("pi/2"), 2, 1, 0.5)
        assert len(points) == 6
        args = sorted({round(p.arg, 12) for p in points})
        assert args == pytest.approx([-math.pi / 4, 0.0, math.pi / 4])

    def test_points_stay_inside_shrinking_domain(self):
        for p in sample_domain(domain("1/x"), 5, 3, 0.1):
            assert abs(p.arg) < 1 / p.modulus

    def test_arg_cap(self):
        points = sample_domain(domain("x"), 3, 2, 0.1, arg_cap=4 * math.pi)
        assert max(abs(p.arg) for p in points) <= 4 * math.pi

    def test_base_radius(self):
        points = sample_domain(domain("pi/4", 1e3), 3, 1, 0.1, start_radius=10.0)
        assert min(p.logmod for p in points) == pytest.approx(math.log(1e3))

    def test_invalid_shrink(self):
        with pytest.raises(UsageError):
            sample_domain(domain("pi/4"), 3, 1, 1.5)

    def test_bound_must_be_positive(self):
        with pytest.raises(DomainViolation):
            sample_domain(domain("1 - x"), 3, 1, 0.1)


class TestAnglePositivity:
    def test_square(self, params):
        report = check_angle_positive(parse("x^2"), domain("pi/4"), params)
        assert report.verdict == PASS
        assert report.statistic == pytest.approx(2.0)

    def test_exponential_on_half_plane(self, params):
        assert check_angle_positive(parse("exp(x)"), domain("pi/2"), params).passed

    def test_power_below_square(self, params):
        params = params.model_copy(update={"start_radius": 100.0})
        report = check_angle_positive(parse("x^(3/2)"), domain("pi/4"), params)
        assert report.passed
        assert report.details["max_ratio"] < 2
        assert report.details["avoids_negative_axis"]

    def test_square_is_in_class(self, params):
        report = check_angle_positive(parse("x^2"), domain("pi/4"), params)
        assert report.details["precondition"] == {
            "requires": "infinitely increasing",
            "holds": True,
        }

    def test_reciprocal_is_outside_the_class(self, params):
        report = check_angle_positive(parse("1/x"), domain("pi/4"), params)
        assert report.verdict == INCONCLUSIVE
        assert report.details["precondition"]["holds"] is False
        assert report.witnesses[0]["reason"] == "argument changed sign"

    def test_negation_is_outside_the_class(self, params):
        report = check_angle_positive(parse("-x"), domain("pi/4"), params)
        assert report.verdict == INCONCLUSIVE
        assert not report.passed


class TestHalfBoundedness:
    def test_reciprocal(self, params):
        report = check_half_bounded(parse("1/x"), domain("pi/4"), params)
        assert report.passed
        assert report.details["bounded_side"] == "f"

    def test_exponential_on_shrinking_domain(self, params):
        report = check_half_bounded(parse("exp(x)"), domain("1/x"), params)
        assert report.passed
        assert report.details["bounded_side"] == "1/f"

    def test_log_on_wide_domain(self, params):
        params = params.model_copy(update={"arg_cap": 4 * math.pi})
        assert check_half_bounded(parse("log(x)"), domain("x"), params).passed


class TestMetricChecks:
    def test_square_expands_by_two(self, params, rng):
        report = check_expansive(parse("x^2"), domain("pi/4"), params, rng)
        assert report.passed
        assert abs(report.statistic - 2) <= 1e-10

    def test_unit_is_outside_the_expansive_class(self, params, rng):
        report = check_expansive(parse("1 + 1/x^3"), domain("pi/4"), params, rng)
        assert report.verdict == INCONCLUSIVE
        assert report.details["precondition"]["holds"] is False
        assert report.witnesses[0]["ratio"] == report.statistic

    def test_expansion_multiplies_under_composition(self, params, rng):
        report = check_expansive(parse("(x^2)(x^(3/2))"), domain("pi/8"), params, rng)
        assert report.passed
        assert abs(report.statistic - 3) <= 1e-10

    @pytest.mark.parametrize("expr", ["(x^2)(x^(3/2))", "(exp(x))(x^(1/2))"])
    def test_angle_positivity_survives_composition(self, params, expr):
        assert check_angle_positive(parse(expr), domain("pi/8"), params).passed

    def test_unit_is_dlipschitz(self, params, rng):
        report = check_dlipschitz(parse("1 + 1/x"), domain("pi/4"), params, rng)
        assert report.passed
        assert report.details["normalization"] == "x"
        assert len(report.details["band_maxima"]) == params.thresholds.n_bands
        assert report.details["precondition"]["holds"] is True

    def test_dlipschitz_needs_a_unit(self, params, rng):
        report = check_dlipschitz(parse("2 + 1/x"), domain("pi/4"), params, rng)
        assert report.verdict == INCONCLUSIVE
        assert report.details["precondition"] == {
            "requires": "tends to 1",
            "holds": False,
        }


class TestUnits:
    @pytest.mark.parametrize("u", ["1 + 1/x", "(1 + 1/x)/(1 + 2/x)"])
    def test_units_at_infinity(self, params, u):
        report = check_unit_at_infinity(parse(u), domain("pi/4"), params)
        assert report.passed
        maxima = report.details["band_maxima"]
        assert maxima == sorted(maxima, reverse=True)

    def test_constant_two_is_not_a_unit(self, params):
        report = check_unit_at_infinity(parse("2 + 1/x"), domain("pi/4"), params)
        assert report.verdict == FAIL
        assert report.witnesses

    def test_arg_distortion(self, params):
        params = params.model_copy(update={"start_radius": 100.0})
        report = check_arg_distortion(
            parse("x^2"), parse("1 + 1/x"), domain("pi/4"), params
        )
        assert report.passed


class TestImageClass:
    def test_square_maps_into_wider_sector(self, params):
        report = check_image_class(
            parse("x^2"), domain("pi/8"), (parse("pi/8"), parse("pi/2")), params
        )
        assert report.passed
        assert any(report.details["lower_bands"])

    def test_image_outside_upper_domain(self, params):
        report = check_image_class(
            parse("x^3"), domain("pi/4"), (parse("pi/8"), parse("pi/4")), params
        )
        assert report.verdict == FAIL


def test_report_dict_drops_infinite_statistic(params):
    report = check_half_bounded(parse("1/x"), domain("pi/4"), params)
    data = report.to_dict()
    assert set(data) == {
        "check",
        "verdict",
        "samples",
        "statistic",
        "witnesses",
        "details",
    }
    assert "rows" not in data
    assert report.rows


def test_paths_start_on_real_axis():
    with pytest.raises(UsageError):
        eval_along_path(parse("x"), [LPoint(1.0, 0.5)])
