"""
Asymptotics Plugin

Subcommands for the symbolic core:
- classify, limit, cmp, lm: limits and dominance at +infinity
- level, eh, alevel: the three complexity measures
- decompose, components, simple: gradings and simplicity
- inv-eh-bound, inv-level: inverse bounds
"""

from __future__ import annotations

import argparse

from ..cli.schemas import (
    AlevelPayload,
    ClassifyPayload,
    ComparePayload,
    ComponentsPayload,
    DecomposePayload,
    EhPayload,
    InverseBoundPayload,
    InverseLevelPayload,
    LevelPayload,
    LimitPayload,
    LimitSchema,
    LmPayload,
    MonomialSchema,
    SimplePayload,
    eh_schema,
)
from ..core.plugins import CommandPlugin, PluginMetadata, add_expression
from ..terms.parser import parse
from ..terms.printer import format_term
from .height import eh, eh_components, inverse_eh_bound, is_simple, level_json
from .level import alevel, inverse_level, level
from .limits import classify, compare, decompose_ub, limit, lm


class AsymptoticsPlugin(CommandPlugin):
    """Limits, levels and exponential heights of germs"""

    order = 20

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="asymptotics",
            version="1.0.0",
            description="Asymptotic order, level, exponential height, angular level",
        )

    def register(self, subparsers, parents) -> None:
        single = [
            ("classify", self._classify, "class of the germ"),
            ("limit", self._limit, "limit at +infinity"),
            ("lm", self._lm, "leading coefficient and monomial"),
            ("level", self._level, "level of a positive germ"),
            ("eh", self._eh, "exponential height"),
            ("alevel", self._alevel, "angular level of a positive germ"),
            ("decompose", self._decompose, "purely infinite / bounded split"),
            ("components", self._components, "summands grouped by eh"),
            ("simple", self._simple, "eh(f) == level(f)"),
        ]
        for name, handler, help in single:
            parser = self.add_command(subparsers, name, handler, parents, help=help)
            add_expression(parser)

        parser = self.add_command(
            subparsers, "cmp", self._compare, parents, help="dominance of f and g"
        )
        add_expression(parser, "f")
        add_expression(parser, "g")

        parser = self.add_command(
            subparsers,
            "inv-eh-bound",
            self._inverse_bound,
            parents,
            help="upper bound on eh(g o f^-1)",
        )
        parser.add_argument("eh_g", type=int)
        parser.add_argument("eh_f", type=int)
        parser.add_argument("level_f", type=int)

        parser = self.add_command(
            subparsers,
            "inv-level",
            self._inverse_level,
            parents,
            help="level of the compositional inverse",
        )
        parser.add_argument("level_f", type=int)

    def _classify(self, args: argparse.Namespace, context) -> ClassifyPayload:
        cls = classify(parse(args.expr), context.budget)
        return ClassifyPayload(germ_class=cls.value)

    def _limit(self, args: argparse.Namespace, context) -> LimitPayload:
        value = limit(parse(args.expr), context.budget)
        return LimitPayload(limit=LimitSchema.from_value(value))

    def _compare(self, args: argparse.Namespace, context) -> ComparePayload:
        result = compare(parse(args.f), parse(args.g), context.budget)
        ratio = None if result.ratio is None else LimitSchema.from_value(result.ratio)
        return ComparePayload(relation=result.relation.value, ratio=ratio)

    def _lm(self, args: argparse.Namespace, context) -> LmPayload:
        lead = lm(parse(args.expr), context.budget)
        return LmPayload(
            coefficient=LimitSchema.from_value(lead.coefficient),
            monomial=MonomialSchema.from_value(lead.monomial),
        )

    def _level(self, args: argparse.Namespace, context) -> LevelPayload:
        return LevelPayload(level=level_json(level(parse(args.expr), context.budget)))

    def _eh(self, args: argparse.Namespace, context) -> EhPayload:
        return EhPayload(eh=eh_schema(eh(parse(args.expr), context.budget)))

    def _alevel(self, args: argparse.Namespace, context) -> AlevelPayload:
        return AlevelPayload(alevel=alevel(parse(args.expr), context.budget))

    def _decompose(self, args: argparse.Namespace, context) -> DecomposePayload:
        purely_infinite, bounded = decompose_ub(parse(args.expr), context.budget)
        return DecomposePayload(
            purely_infinite=format_term(purely_infinite), bounded=format_term(bounded)
        )

    def _components(self, args: argparse.Namespace, context) -> ComponentsPayload:
        groups = eh_components(parse(args.expr), context.budget)
        return ComponentsPayload(
            components={str(level_json(k)): format_term(v) for k, v in groups.items()}
        )

    def _simple(self, args: argparse.Namespace, context) -> SimplePayload:
        f = parse(args.expr)
        return SimplePayload(
            simple=is_simple(f, context.budget),
            eh=eh_schema(eh(f, context.budget)),
            level=level_json(level(f, context.budget)),
        )

    def _inverse_bound(self, args: argparse.Namespace, context) -> InverseBoundPayload:
        return InverseBoundPayload(
            bound=inverse_eh_bound(args.eh_g, args.eh_f, args.level_f)
        )

    def _inverse_level(self, args: argparse.Namespace, context) -> InverseLevelPayload:
        return InverseLevelPayload(inverse_level=inverse_level(args.level_f))
