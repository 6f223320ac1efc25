"""Acceptance suite runner and the selftest command"""

import pytest

from germcalc.cli.output import error_result
from germcalc.core.errors import DepthExceeded, PositivityError, SelftestFailed
from germcalc.selftest import GROUPS, CaseResult, run_suite
from germcalc.selftest.suite import FAILED, PASSED, SKIPPED, _case, _expect


class TestCaseRunner:
    def test_success(self):
        assert _case("ok", lambda: None) == CaseResult("ok", PASSED)

    def test_problem_fails(self):
        result = _case("bad", lambda: "expected 1, got 2")
        assert result.status == FAILED
        assert result.detail == "expected 1, got 2"

    def test_undecidable_is_skipped(self):
        def check():
            raise DepthExceeded("too deep", guard=3)

        assert _case("deep", check).status == SKIPPED

    def test_library_error_fails(self):
        def check():
            raise PositivityError("not positive")

        result = _case("neg", check)
        assert result.status == FAILED
        assert result.detail.startswith("positivity_error")

    def test_expect(self):
        assert _expect(2, 2) is None
        assert _expect(1, 2) == "expected 2, got 1"


def test_groups_are_named():
    assert {"known-values", "oracle", "domains", "inverses"} <= set(GROUPS)


def test_known_values_pass(budget):
    results = run_suite(["known-values"], budget=budget)
    assert results
    assert [r for r in results if r.status == FAILED] == []


def test_selftest_command(cli):
    code, data = cli("selftest", "--only", "known-values")
    assert code == 0
    assert data["failed"] == 0
    assert data["passed"] + data["skipped"] == len(data["cases"])


def test_selftest_rejects_unknown_group(cli):
    code, _ = cli("selftest", "--only", "nope")
    assert code == 2


def test_failure_envelope_carries_report():
    report = {"passed": 1, "failed": 1, "skipped": 0, "cases": []}
    result = error_result(SelftestFailed("1 of 2 selftest cases failed", report))
    assert result.status == "error"
    assert result.code == "selftest_failed"
    assert result.payload == report
    assert "failed: 1" in result.diagnostics


@pytest.mark.slow
def test_full_suite(params):
    results = run_suite(params=params, trials=3)
    assert [r.to_dict() for r in results if r.status == FAILED] == []


def test_oracle_group_covers_generated_terms(budget):
    results = run_suite(["oracle"], budget=budget, oracle_terms=4)
    names = [r.name for r in results]
    assert sum(n.startswith("random limit ") for n in names) == 4
    assert sum(n.startswith("random level ") for n in names) == 4
    assert sum(n.startswith("random cmp ") for n in names) == 3


@pytest.mark.slow
def test_oracle_agrees_on_generated_terms(budget):
    results = run_suite(["oracle"], budget=budget, seed=7, oracle_terms=500)
    assert [r.to_dict() for r in results if r.status == FAILED] == []
    assert any(r.status == PASSED for r in results if r.name.startswith("random"))
