"""Numeric oracle and expression corpora"""

import numpy as np
import pytest

from germcalc.asymptotics import LimitKind, limit
from germcalc.core.errors import NoSandwichFound, PrecisionExhausted, UsageError
from germcalc.oracle import (
    CONFIRMED,
    WEAK,
    generate_terms,
    load_corpus,
    numeric_compare,
    numeric_level,
    numeric_limit,
)
from germcalc.oracle.numeric import _reduce
from germcalc.terms import format_term, parse, tower_height
from germcalc.terms.simplify import evidently_large


class TestReduce:
    def test_agreeing_values(self):
        assert _reduce([1.5, 1.0000001, 1.0]) == (1.0, CONFIRMED)

    def test_zero_values(self):
        assert _reduce([0, 0, 0]) == (0, CONFIRMED)

    def test_divergent_values(self):
        assert _reduce([1e4, 1e8, 1e16]) == ("+inf", CONFIRMED)
        assert _reduce([-1e4, -1e8, -1e16]) == ("-inf", CONFIRMED)

    def test_slow_growth_is_weak(self):
        assert _reduce([2.0, 3.0, 4.0]) == ("+inf", WEAK)

    def test_too_few_points(self):
        with pytest.raises(PrecisionExhausted):
            _reduce([1.0, 2.0])


class TestNumericLimit:
    def test_euler_number(self):
        estimate = numeric_limit(parse("exp(1 + 1/x)"))
        assert estimate.confirmed
        assert estimate.value == pytest.approx(2.718281828459045, rel=1e-6)

    def test_divergence(self):
        estimate = numeric_limit(parse("x*log(x)"))
        assert estimate.value == "+inf"
        assert estimate.confirmed

    def test_decay(self):
        estimate = numeric_limit(parse("log(x)/x"))
        assert estimate.value == 0

    def test_trace(self):
        estimate = numeric_limit(parse("x/(x + 1)"), precision=128)
        assert estimate.trace["precisions"] == [128, 256]
        assert len(estimate.trace["values"]) == len(estimate.trace["grid"])
        assert estimate.to_dict()["quantity"] == "limit"


class TestNumericCompare:
    @pytest.mark.parametrize(
        "f, g, relation",
        [("x", "exp(x)", "≺"), ("x + 1", "x", "≍"), ("x^2", "x*log(x)", "≻")],
    )
    def test_relations(self, f, g, relation):
        assert numeric_compare(parse(f), parse(g)).value == relation


class TestNumericLevel:
    @pytest.mark.parametrize(
        "text, expected", [("exp(x)", 1), ("log(x)", -1), ("x^2", 0)]
    )
    def test_levels(self, text, expected):
        estimate = numeric_level(parse(text))
        assert estimate.value == expected
        assert estimate.trace["sandwiches"]

    def test_confirmed_level_uses_both_precisions(self):
        estimate = numeric_level(parse("x*log(x)"), precision=128)
        assert estimate.confirmed
        assert estimate.value == 0
        assert estimate.trace["precisions"] == [128, 256]
        assert estimate.trace["points"] + len(estimate.trace["skipped"]) == 9

    def test_no_sandwich_for_triple_exponential(self):
        with pytest.raises(NoSandwichFound):
            numeric_level(parse("exp_3(x)"), max_k=1, max_nu=2)


class TestCorpus:
    def test_default_corpus(self):
        terms = load_corpus()
        assert len(terms) >= 30
        assert parse("x + exp(-x)") in terms

    def test_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("# header\n\nx^2  # square\nlog(x)\n", encoding="utf-8")
        assert load_corpus(path) == [parse("x^2"), parse("log(x)")]

    def test_bad_line_names_file_and_line(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("x\nexp(x\n", encoding="utf-8")
        with pytest.raises(UsageError, match=r"corpus.txt:2"):
            load_corpus(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_corpus(tmp_path / "absent.txt")


class TestGenerator:
    def test_seeded_generation_is_reproducible(self):
        first = generate_terms(np.random.default_rng(3), 10)
        second = generate_terms(np.random.default_rng(3), 10)
        assert first == second

    def test_large_terms(self, rng):
        for t in generate_terms(rng, 25, max_depth=3, max_tower=2, kind="large"):
            assert tower_height(t) <= 2
            assert evidently_large(t), format_term(t)

    def test_unknown_kind(self, rng):
        with pytest.raises(UsageError):
            generate_terms(rng, 1, kind="small")


def test_engine_agrees_with_confirmed_estimates(budget):
    for text in ["x/(x + 1)", "exp(1 + 1/x)", "x*log(x)", "log(x)/x", "-exp(x)"]:
        f = parse(text)
        estimate = numeric_limit(f)
        if not estimate.confirmed:
            continue
        kind = limit(f, budget).kind
        if estimate.value == "+inf":
            assert kind == LimitKind.PLUS_INFINITY
        elif estimate.value == "-inf":
            assert kind == LimitKind.MINUS_INFINITY
        elif estimate.value == 0:
            assert kind == LimitKind.ZERO
        else:
            assert kind == LimitKind.FINITE
