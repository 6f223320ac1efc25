"""
Continuation Plugin

``germcalc continue ...`` subcommands: evaluation on the Riemann surface of
the logarithm, the predicted continuation profile and the sampled checks.
"""

from __future__ import annotations

import argparse

from ..asymptotics.height import continuation_profile, inverse_is_simple
from ..asymptotics.level import inverse_level
from ..cli.output import write_dump
from ..cli.schemas import CheckPayload, EvalPayload, LPointSchema, ProfilePayload
from ..core.errors import UsageError
from ..core.plugins import CommandPlugin, PluginMetadata, add_expression
from ..domains.real_domains import DomainSpec
from ..terms.parser import parse
from .checks import (
    CheckReport,
    check_angle_positive,
    check_arg_distortion,
    check_dlipschitz,
    check_expansive,
    check_half_bounded,
    check_image_class,
    check_unit_at_infinity,
)
from .evaluate import eval_along_path, evaluate_points
from .points import LPoint


def _point(text: str) -> LPoint:
    try:
        return LPoint.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


class ContinuationPlugin(CommandPlugin):
    """Log-chart evaluation and sampled continuation checks"""

    order = 40

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="lchart",
            version="1.0.0",
            description="Evaluation on the log surface and continuation checks",
        )

    def register(self, subparsers, parents) -> None:
        group = subparsers.add_parser(
            "continue", help="continuation on the log surface", parents=parents
        )
        commands = group.add_subparsers(dest="continue_command", metavar="COMMAND")
        commands.required = True

        parser = self.add_command(
            commands,
            "eval",
            self._eval,
            parents,
            help="values of the lift at LOGMOD:ARG points",
        )
        add_expression(parser)
        parser.add_argument("points", nargs="+", type=_point, metavar="LOGMOD:ARG")
        parser.add_argument(
            "--path",
            action="store_true",
            help="treat the points as one path instead of separate arcs",
        )

        parser = self.add_command(
            commands,
            "profile",
            self._profile,
            parents,
            help="predicted domain classes of the continuation",
        )
        add_expression(parser)

        for name, handler, help in (
            ("angle-positive", self._angle_positive, "sign(arg f) == sign(arg x)"),
            ("half-bounded", self._half_bounded, "f or 1/f stays bounded"),
            ("expansive", self._expansive, "min d(f(x), f(y)) / d(x, y)"),
            ("dlipschitz", self._dlipschitz, "D-Lipschitz statistic of a unit"),
            ("unit", self._unit, "d(u(x), 1) tends to zero"),
        ):
            parser = self.add_command(commands, name, handler, parents, help=help)
            add_expression(parser)
            self._add_domain(parser)

        parser = self.add_command(
            commands,
            "image-class",
            self._image_class,
            parents,
            help="image lies between U_g1 and U_g2",
        )
        add_expression(parser)
        add_expression(parser, "g1", "lower target bound")
        add_expression(parser, "g2", "upper target bound")
        self._add_domain(parser)

        parser = self.add_command(
            commands,
            "arg-distortion",
            self._arg_distortion,
            parents,
            help="arg(f*u) within 1/2 and 3/2 of arg f",
        )
        add_expression(parser)
        add_expression(parser, "u", "unit at infinity")
        self._add_domain(parser)

    @staticmethod
    def _add_domain(parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--domain",
            default="pi/4",
            metavar="H",
            help="bound h of the sampled domain U_h (default: pi/4)",
        )
        parser.add_argument("--radius", type=float, default=0.0, help="base radius a")

    def _spec(self, args: argparse.Namespace) -> DomainSpec:
        if args.radius < 0:
            raise UsageError(f"--radius {args.radius} is negative")
        return DomainSpec(parse(args.domain), args.radius)

    def _report(self, report: CheckReport, context) -> CheckPayload:
        if context.dump:
            write_dump(report.rows, context.dump)
        return CheckPayload(**report.to_dict())

    def _eval(self, args: argparse.Namespace, context) -> EvalPayload:
        f = parse(args.expr)
        if args.path:
            values = eval_along_path(f, args.points, context.precision)
        else:
            values = evaluate_points(f, args.points, context.precision)
        return EvalPayload(values=[LPointSchema(**v.to_dict()) for v in values])

    def _profile(self, args: argparse.Namespace, context) -> ProfilePayload:
        f = parse(args.expr)
        profile = continuation_profile(f, context.budget)
        return ProfilePayload(
            **profile.to_dict(),
            inverse_level=inverse_level(profile.level),
            inverse_simple=inverse_is_simple(f, context.budget),
        )

    def _angle_positive(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_angle_positive(
            parse(args.expr), self._spec(args), context.params
        )
        return self._report(report, context)

    def _half_bounded(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_half_bounded(parse(args.expr), self._spec(args), context.params)
        return self._report(report, context)

    def _expansive(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_expansive(
            parse(args.expr), self._spec(args), context.params, context.rng()
        )
        return self._report(report, context)

    def _dlipschitz(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_dlipschitz(
            parse(args.expr), self._spec(args), context.params, context.rng()
        )
        return self._report(report, context)

    def _unit(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_unit_at_infinity(
            parse(args.expr), self._spec(args), context.params
        )
        return self._report(report, context)

    def _image_class(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_image_class(
            parse(args.expr),
            self._spec(args),
            (parse(args.g1), parse(args.g2)),
            context.params,
        )
        return self._report(report, context)

    def _arg_distortion(self, args: argparse.Namespace, context) -> CheckPayload:
        report = check_arg_distortion(
            parse(args.expr), parse(args.u), self._spec(args), context.params
        )
        return self._report(report, context)
