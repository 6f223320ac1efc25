"""Command line: payloads, error envelopes, exit codes and global flags"""

import io
import json

import pytest

from germcalc.cli import build_parser, run
from germcalc.cli.schemas import PAYLOAD_MODELS
from germcalc.terms import format_term, parse, simplify


class TestPayloads:
    def test_exponential_height(self, cli):
        assert cli("eh", "x + exp(-x)") == (0, {"eh": {"exact": 1}})

    def test_level(self, cli):
        assert cli("level", "exp(x)") == (0, {"level": 1})

    def test_angular_level(self, cli):
        assert cli("alevel", "1/x") == (0, {"alevel": 1})

    def test_constant_level_serializes_minus_infinity(self, cli):
        assert cli("level", "2 + 1/x") == (0, {"level": "-inf"})

    def test_parse(self, cli):
        code, data = cli("parse", "log_2(x)")
        assert code == 0
        assert data["term"] == "log(log(x))"
        assert data["tower_height"] == 2
        assert data["ast"]["node"] == "Log"

    def test_limit(self, cli):
        code, data = cli("limit", "x/(x + 1)")
        assert code == 0
        assert data["limit"]["kind"] == "FiniteNonzero"
        assert data["limit"]["sign"] == 1

    def test_compare(self, cli):
        code, data = cli("cmp", "x", "exp(x)")
        assert code == 0
        assert data["relation"] == "≺"

    def test_classify_uses_class_key(self, cli):
        assert cli("classify", "1/log(x)") == (0, {"class": "SmallPositive"})

    def test_inverse_commands(self, cli):
        assert cli("inv-eh-bound", "2", "1", "0") == (0, {"bound": 3})
        assert cli("inv-level", "-2") == (0, {"inverse_level": 2})

    def test_domain_class(self, cli):
        code, data = cli("domain", "class", "1/x")
        assert code == 0
        assert data["k"] == 1

    def test_domain_nu_mr(self, cli):
        code, data = cli("domain", "nu-mr", "1/x", "2")
        assert code == 0
        assert data["term"] == format_term(simplify(parse("2/x")))

    def test_continuation_profile(self, cli):
        code, data = cli("continue", "profile", "exp(x)")
        assert code == 0
        assert data["eh"] == 1
        assert data["lambda"] == 1

    def test_continuation_check(self, cli):
        code, data = cli("continue", "angle-positive", "x^2", "--precision", "128")
        assert code == 0
        assert data["check"] == "angle_positive"
        assert data["verdict"] == "pass"

    def test_continuation_eval(self, cli):
        code, data = cli("continue", "eval", "x^2", "1:0.25")
        assert code == 0
        assert data["values"][0]["logmod"] == pytest.approx(2.0)
        assert data["values"][0]["arg"] == pytest.approx(0.5)

    def test_oracle_limit(self, cli):
        code, data = cli("oracle", "limit", "x*log(x)")
        assert code == 0
        assert data["value"] == "+inf"
        assert data["confidence"] == "confirmed"


class TestErrors:
    def test_syntax_error_exit_code(self, cli):
        code, data = cli("eh", "x +")
        assert code == 2
        assert data["status"] == "error"
        assert data["code"] == "syntax_error"
        assert any(d.startswith("position") for d in data["diagnostics"])

    def test_computation_error_exit_code(self, cli):
        code, data = cli("level", "-x")
        assert code == 1
        assert data["code"] == "positivity_error"

    def test_unknown_command(self, cli):
        code, data = cli("frobnicate")
        assert code == 2
        assert data is None

    def test_invalid_precision_flag(self, cli):
        code, data = cli("level", "x", "--precision", "8")
        assert code == 2
        assert data["code"] == "usage_error"

    def test_max_precision_below_precision(self, cli):
        code, data = cli("level", "x", "--precision", "512", "--max-precision", "256")
        assert code == 2
        assert data["code"] == "usage_error"

    def test_missing_params_file(self, cli, tmp_path):
        code, data = cli(
            "continue", "unit", "1 + 1/x", "--params", str(tmp_path / "none.yaml")
        )
        assert code == 2
        assert data["code"] == "usage_error"


class TestGlobalFlags:
    def test_flags_before_subcommand(self, cli):
        assert cli("--precision", "128", "level", "log(x)") == (0, {"level": -1})

    def test_params_file(self, cli, tmp_path):
        path = tmp_path / "params.yaml"
        path.write_text("n_radial: 4\nn_angular: 2\n", encoding="utf-8")
        code, data = cli("continue", "unit", "1 + 1/x", "--params", str(path))
        assert code == 0
        assert data["samples"] == 4 * (1 + 2 * 2)

    def test_unknown_params_key(self, cli, tmp_path):
        path = tmp_path / "params.json"
        path.write_text('{"radius": 3}', encoding="utf-8")
        code, data = cli("continue", "unit", "1 + 1/x", "--params", str(path))
        assert code == 2

    def test_dump_writes_samples(self, cli, tmp_path):
        path = tmp_path / "samples.csv"
        code, _ = cli("continue", "unit", "1 + 1/x", "--dump", str(path))
        assert code == 0
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header == "logmod,arg,value_logmod,value_arg"

    def test_plain_output(self):
        out = io.StringIO()
        assert run(["level", "exp(x)", "--plain"], stdout=out) == 0
        assert out.getvalue().strip() == "level: 1"


class TestSchemas:
    def test_every_schema_is_published(self, cli):
        code, data = cli("schema")
        assert code == 0
        assert set(data["schemas"]) == set(PAYLOAD_MODELS)

    def test_single_schema(self, cli):
        code, data = cli("schema", "eh")
        assert code == 0
        assert list(data["schemas"]) == ["eh"]

    def test_unknown_schema(self, cli):
        code, data = cli("schema", "nope")
        assert code == 2

    def test_payload_validates_against_model(self, cli):
        _, data = cli("simple", "x + exp(-x)")
        model = PAYLOAD_MODELS["simple"].model_validate(data)
        assert model.simple is False
        assert json.loads(model.model_dump_json(by_alias=True)) == data


def test_every_command_is_registered():
    parser = build_parser()
    choices = parser._subparsers._group_actions[0].choices
    for name in ["parse", "simplify", "limit", "cmp", "lm", "classify", "level", "eh"]:
        assert name in choices
    for name in ["alevel", "decompose", "components", "simple", "inv-eh-bound"]:
        assert name in choices
    for group in ["domain", "continue", "oracle", "selftest", "schema"]:
        assert group in choices
