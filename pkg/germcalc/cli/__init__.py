"""
germcalc command line.

Subcommands are contributed by the ``plugin`` module of every feature
subpackage; this module wires them to the global flags, runs the selected
handler and prints its payload (or an error envelope) on standard output.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Optional, Sequence, TextIO

from pydantic import ValidationError

from ..core.config import (
    VALID_LOG_LEVELS,
    CheckParams,
    Settings,
    get_settings,
    load_check_params,
    validate_configuration,
)
from ..core.errors import GermcalcError, UsageError
from ..core.logging import setup_logging
from ..core.plugins import PluginManager
from .context import CommandContext
from .output import error_result, render_json, render_plain

logger = logging.getLogger(__name__)


def global_flags() -> argparse.ArgumentParser:
    """
    Flags accepted before or after any subcommand.

    Defaults are suppressed so a flag given at one level is not reset by a
    parser further down.
    """
    common = argparse.ArgumentParser(
        add_help=False, argument_default=argparse.SUPPRESS
    )
    common.add_argument("--precision", type=int, metavar="BITS", help="default 256")
    common.add_argument(
        "--max-precision", type=int, metavar="BITS", help="default 4096"
    )
    common.add_argument("--plain", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, metavar="N", help="random seed")
    common.add_argument(
        "--params", metavar="FILE", help="check parameters (JSON or YAML)"
    )
    common.add_argument("--dump", metavar="FILE", help="write check samples as CSV")
    common.add_argument("--log-level", choices=VALID_LOG_LEVELS, type=str.upper)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    import germcalc

    common = global_flags()
    parser = argparse.ArgumentParser(
        prog="germcalc",
        description="Asymptotic calculus for exp-log germs at +infinity",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    manager = PluginManager()
    manager.load_all(germcalc)
    manager.build_commands(subparsers, [common])
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = get_settings()
    update: dict[str, Any] = {}
    if getattr(args, "precision", None) is not None:
        update["precision_bits"] = args.precision
    if getattr(args, "max_precision", None) is not None:
        update["max_precision_bits"] = args.max_precision
    if getattr(args, "verbose", False):
        update["log_level"] = "DEBUG"
    elif getattr(args, "log_level", None):
        update["log_level"] = args.log_level
    if not update:
        return settings
    try:
        settings = Settings(**{**settings.model_dump(), **update})
    except ValidationError as e:
        raise UsageError(f"Invalid global flags: {e}")

    problems = validate_configuration(settings)
    if problems["errors"]:
        raise UsageError("; ".join(problems["errors"]))
    return settings


def _params(args: argparse.Namespace, settings: Settings) -> CheckParams:
    overrides: dict[str, Any] = {}
    if getattr(args, "precision", None) is not None:
        overrides["precision_bits"] = settings.precision_bits
    path = getattr(args, "params", None)
    if path:
        return load_check_params(path, **overrides)
    return CheckParams(**overrides)


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    """Run one command; returns the process exit code"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    plain = getattr(args, "plain", False)
    render = render_plain if plain else render_json
    try:
        settings = _settings(args)
        setup_logging(settings.log_level)
        context = CommandContext(
            settings=settings,
            params=_params(args, settings),
            plain=plain,
            seed=getattr(args, "seed", None),
            dump=getattr(args, "dump", None),
        )
        payload = args.handler(args, context)
    except GermcalcError as e:
        logger.debug("%s failed: %s", args.command, e.message)
        render(error_result(e), stdout)
        return e.exit_code

    render(payload, stdout)
    return 0


def main() -> None:
    """Console script entry point"""
    sys.exit(run())
