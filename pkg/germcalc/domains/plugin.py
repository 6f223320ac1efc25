"""
Domain Plugin

``germcalc domain ...`` subcommands: angular classes of real domains,
the nu-maps, standard domains and translation sandwiches.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from ..cli.schemas import (
    AngleBoundedPayload,
    DomainClassPayload,
    NuExpPayload,
    NuLogPayload,
    SandwichPayload,
    StandardPayload,
    TermPayload,
)
from ..core.plugins import (
    CommandPlugin,
    PluginMetadata,
    add_expression,
    positive_rational,
)
from ..terms.parser import parse
from ..terms.printer import format_term
from .real_domains import (
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


class DomainPlugin(CommandPlugin):
    """Domain arithmetic on the Riemann surface of the logarithm"""

    order = 30

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="domains",
            version="1.0.0",
            description="Angular classes of real domains and the nu-maps",
        )

    def register(self, subparsers, parents) -> None:
        group = subparsers.add_parser(
            "domain", help="domain arithmetic", parents=parents
        )
        commands = group.add_subparsers(dest="domain_command", metavar="COMMAND")
        commands.required = True

        parser = self.add_command(
            commands, "class", self._class, parents, help="angular class of U_h"
        )
        add_expression(parser, "h")
        parser.add_argument("--radius", type=float, default=0.0, help="base radius a")

        parser = self.add_command(
            commands,
            "witnesses",
            self._witnesses,
            parents,
            help="class of a domain between U_g1 and U_g2",
        )
        add_expression(parser, "g1")
        add_expression(parser, "g2")

        for name, handler, help in (
            ("nu-mr", self._nu_mr, "bound of r*U_h"),
            ("nu-pr", self._nu_pr, "bound of the image of U_h under x^r"),
        ):
            parser = self.add_command(commands, name, handler, parents, help=help)
            add_expression(parser, "h")
            parser.add_argument("r", type=positive_rational)

        for name, handler, help in (
            ("nu-log", self._nu_log, "class and shape of nu_log(h)"),
            ("nu-exp", self._nu_exp, "class of nu_exp(h) for standard U_h"),
            ("standard", self._standard, "is U_h a standard domain"),
            ("angle-bounded", self._angle_bounded, "is h bounded"),
        ):
            parser = self.add_command(commands, name, handler, parents, help=help)
            add_expression(parser, "h")

        parser = self.add_command(
            commands,
            "sandwich",
            self._sandwich,
            parents,
            help="bounds enclosing the translate of U_h",
        )
        add_expression(parser, "h")
        parser.add_argument(
            "eps", type=positive_rational, nargs="?", default=Fraction(1)
        )

    def _class(self, args: argparse.Namespace, context) -> DomainClassPayload:
        spec = DomainSpec(parse(args.h), args.radius)
        return DomainClassPayload(**domain_class(spec, context.budget).to_dict())

    def _witnesses(self, args: argparse.Namespace, context) -> DomainClassPayload:
        result = domain_class_from_witnesses(
            parse(args.g1), parse(args.g2), context.budget
        )
        return DomainClassPayload(**result.to_dict())

    def _nu_mr(self, args: argparse.Namespace, context) -> TermPayload:
        return TermPayload(term=format_term(nu_mr(parse(args.h), args.r)))

    def _nu_pr(self, args: argparse.Namespace, context) -> TermPayload:
        return TermPayload(term=format_term(nu_pr(parse(args.h), args.r)))

    def _nu_log(self, args: argparse.Namespace, context) -> NuLogPayload:
        template = nu_log_class(parse(args.h), context.budget)
        return NuLogPayload(
            germ_class=template.germ_class,
            quotient=format_term(template.quotient),
            asymptotic_form=template.asymptotic_form,
        )

    def _nu_exp(self, args: argparse.Namespace, context) -> NuExpPayload:
        return NuExpPayload(germ_class=nu_exp_class(parse(args.h), context.budget))

    def _standard(self, args: argparse.Namespace, context) -> StandardPayload:
        return StandardPayload(standard=is_standard(parse(args.h), context.budget))

    def _angle_bounded(self, args: argparse.Namespace, context) -> AngleBoundedPayload:
        return AngleBoundedPayload(
            angle_bounded=angle_bounded(parse(args.h), context.budget)
        )

    def _sandwich(self, args: argparse.Namespace, context) -> SandwichPayload:
        lower, upper = translate_sandwich(parse(args.h), args.eps, context.budget)
        return SandwichPayload(lower=format_term(lower), upper=format_term(upper))
