"""Configuration, error taxonomy and plugin discovery"""

import argparse
import logging

import pytest
from pydantic import ValidationError

import germcalc
from germcalc.core.config import (
    Budget,
    CheckParams,
    Settings,
    load_check_params,
    validate_configuration,
)
from germcalc.core.errors import (
    ArityError,
    GermcalcError,
    PositivityError,
    TermSyntaxError,
    UsageError,
)
from germcalc.core.logging import setup_logging
from germcalc.core.plugins import (
    CommandPlugin,
    PluginManager,
    PluginMetadata,
    PluginStatus,
    positive_rational,
)


class TestSettings:
    def test_defaults(self, settings):
        assert settings.precision_bits == 256
        assert settings.max_precision_bits == 4096
        assert settings.log_level == "WARNING"

    def test_environment_prefix(self, monkeypatch):
        monkeypatch.setenv("GERMCALC_PRECISION_BITS", "512")
        monkeypatch.setenv("GERMCALC_LOG_LEVEL", "debug")
        settings = Settings(_env_file=None)
        assert settings.precision_bits == 512
        assert settings.log_level == "DEBUG"

    def test_precision_floor(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, precision_bits=32)

    def test_invalid_log_level(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_level="LOUD")

    def test_budget_snapshot(self, settings):
        budget = settings.budget()
        assert budget == Budget()
        assert hash(budget) == hash(Budget())

    def test_validate_configuration(self):
        settings = Settings(_env_file=None, precision_bits=1024, max_precision_bits=512)
        problems = validate_configuration(settings)
        assert problems["errors"] == [
            "max_precision_bits must not be below precision_bits"
        ]

    def test_disabled_fallback_warns(self):
        problems = validate_configuration(
            Settings(_env_file=None, sympy_fallback=False)
        )
        assert problems["errors"] == []
        assert len(problems["warnings"]) == 1


class TestBudget:
    def test_orders_double(self):
        assert Budget(expansion_order=4, max_expansion_order=32).orders() == [
            4,
            8,
            16,
            32,
        ]

    def test_precisions_end_at_ceiling(self):
        assert Budget(precision_bits=256, max_precision_bits=1000).precisions() == [
            256,
            512,
            1000,
        ]


class TestCheckParams:
    def test_yaml(self, tmp_path):
        path = tmp_path / "params.yaml"
        path.write_text(
            "n_radial: 5\nthresholds:\n  unit_decay: 0.1\n", encoding="utf-8"
        )
        params = load_check_params(path)
        assert params.n_radial == 5
        assert params.thresholds.unit_decay == 0.1

    def test_json_with_override(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text('{"n_angular": 2, "precision_bits": 128}', encoding="utf-8")
        params = load_check_params(path, precision_bits=512)
        assert params.n_angular == 2
        assert params.precision_bits == 512

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "params.yaml"
        path.write_text("", encoding="utf-8")
        assert load_check_params(path) == CheckParams()

    @pytest.mark.parametrize(
        "text", ["- 1\n- 2\n", "shrink: 2\n", "unknown: 1\n", "n_radial: [\n"]
    )
    def test_invalid(self, tmp_path, text):
        path = tmp_path / "params.yaml"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(UsageError):
            load_check_params(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError, match="Cannot read"):
            load_check_params(tmp_path / "absent.yaml")


class TestErrors:
    def test_to_dict(self):
        error = PositivityError("level needs a positive germ", germ_class="Zero")
        assert error.to_dict() == {
            "code": "positivity_error",
            "message": "level needs a positive germ",
            "details": {"germ_class": "Zero"},
        }
        assert error.exit_code == 1

    def test_syntax_errors_are_usage_failures(self):
        assert TermSyntaxError("unexpected token", 4).exit_code == 2
        assert issubclass(ArityError, TermSyntaxError)
        assert UsageError("bad").exit_code == 2

    def test_default_message_is_code(self):
        assert str(GermcalcError()) == "error"


class TestPlugins:
    def test_discovery_order(self):
        manager = PluginManager()
        plugins = manager.load_all(germcalc)
        names = [p.metadata.name for p in plugins]
        assert names == [
            "terms",
            "asymptotics",
            "domains",
            "lchart",
            "oracle",
            "selftest",
            "cli",
        ]
        assert all(
            m.status == PluginStatus.ACTIVE for m in manager.list_plugins().values()
        )

    def test_duplicate_registration(self):
        manager = PluginManager()
        plugin_class = type(manager.load_all(germcalc)[0])
        with pytest.raises(ValueError, match="already registered"):
            manager.register_plugin(plugin_class)

    def test_incompatible_api_version(self):
        class FuturePlugin(CommandPlugin):
            def describe(self):
                return PluginMetadata(
                    name="future", version="2.0.0", description="", api_version="2"
                )

            def register(self, subparsers, parents):
                pass

        manager = PluginManager()
        with pytest.raises(ValueError, match="API version 2"):
            manager.register_plugin(FuturePlugin)
        assert "future" not in manager.list_plugins()

    @pytest.mark.parametrize("text, expected", [("3", 3), ("1/2", 0.5)])
    def test_positive_rational(self, text, expected):
        assert positive_rational(text) == expected

    @pytest.mark.parametrize("text", ["0", "-1", "a", "1/0"])
    def test_positive_rational_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            positive_rational(text)


def test_setup_logging_sets_level():
    setup_logging("debug")
    assert logging.getLogger().level == logging.DEBUG
    assert logging.getLogger("sympy").level == logging.WARNING
    setup_logging("WARNING")
