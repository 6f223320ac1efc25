"""
Oracle Plugin

``germcalc oracle limit|level|cmp``: brute-force numeric estimates, for
checking the symbolic answers by hand.
"""

from __future__ import annotations

import argparse

from ..cli.schemas import OraclePayload
from ..core.plugins import CommandPlugin, PluginMetadata, add_expression
from ..terms.parser import parse
from .numeric import LIMIT_GRID, numeric_compare, numeric_level, numeric_limit


def _grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated grid")
    if len(grid) < 3 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("grid needs at least 3 increasing points")
    return grid


class OraclePlugin(CommandPlugin):
    """Numeric limits, comparisons and levels"""

    order = 50

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="oracle",
            version="1.0.0",
            description="Brute-force numeric asymptotics",
        )

    def register(self, subparsers, parents) -> None:
        group = subparsers.add_parser(
            "oracle", help="numeric estimates of limits and levels", parents=parents
        )
        commands = group.add_subparsers(dest="oracle_command", metavar="COMMAND")
        commands.required = True

        parser = self.add_command(
            commands, "limit", self._limit, parents, help="numeric limit at +infinity"
        )
        add_expression(parser)
        parser.add_argument(
            "--grid",
            type=_grid,
            default=LIMIT_GRID,
            help="comma separated evaluation points",
        )

        parser = self.add_command(
            commands, "level", self._level, parents, help="level by sandwich search"
        )
        add_expression(parser)
        parser.add_argument("--max-k", type=int, default=2)
        parser.add_argument("--max-nu", type=int, default=4)

        parser = self.add_command(
            commands, "cmp", self._compare, parents, help="numeric dominance of f and g"
        )
        add_expression(parser, "f")
        add_expression(parser, "g")

    def _limit(self, args: argparse.Namespace, context) -> OraclePayload:
        estimate = numeric_limit(parse(args.expr), args.grid, context.precision)
        return OraclePayload(**estimate.to_dict())

    def _level(self, args: argparse.Namespace, context) -> OraclePayload:
        estimate = numeric_level(
            parse(args.expr), args.max_k, args.max_nu, context.precision
        )
        return OraclePayload(**estimate.to_dict())

    def _compare(self, args: argparse.Namespace, context) -> OraclePayload:
        estimate = numeric_compare(
            parse(args.f), parse(args.g), precision=context.precision
        )
        return OraclePayload(**estimate.to_dict())
