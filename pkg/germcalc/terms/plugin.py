"""
Term Plugin

Subcommands for the term algebra:
- parse: read an expression and show its AST
- simplify: rewrite to the simplifier's normal form
"""

from __future__ import annotations

import argparse
import logging

from ..cli.schemas import ParsePayload, SimplifyPayload
from ..core.plugins import CommandPlugin, PluginMetadata, add_expression
from .nodes import term_id, tower_height
from .parser import parse
from .printer import format_term, to_ast
from .simplify import simplify

logger = logging.getLogger(__name__)


class TermPlugin(CommandPlugin):
    """Parsing and simplification of germ expressions"""

    order = 10

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="terms",
            version="1.0.0",
            description="Parse, print and simplify exp-log terms",
        )

    def register(self, subparsers, parents) -> None:
        parser = self.add_command(
            subparsers, "parse", self._parse, parents, help="parse an expression"
        )
        add_expression(parser)

        parser = self.add_command(
            subparsers, "simplify", self._simplify, parents, help="simplify a term"
        )
        add_expression(parser)

    def _parse(self, args: argparse.Namespace, context) -> ParsePayload:
        term = parse(args.expr)
        return ParsePayload(
            term=format_term(term), ast=to_ast(term), tower_height=tower_height(term)
        )

    def _simplify(self, args: argparse.Namespace, context) -> SimplifyPayload:
        term = simplify(parse(args.expr))
        logger.debug("simplified %r", args.expr)
        return SimplifyPayload(simplified=format_term(term), term_id=term_id(term))
