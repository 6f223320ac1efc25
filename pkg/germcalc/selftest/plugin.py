"""
Selftest Plugin

``germcalc selftest``: runs the in-package acceptance suite and exits
non-zero when any case fails.
"""

from __future__ import annotations

import argparse
import logging

from ..cli.schemas import SelftestCase, SelftestPayload
from ..core.errors import SelftestFailed
from ..core.plugins import CommandPlugin, PluginMetadata
from .suite import FAILED, GROUPS, PASSED, SKIPPED, run_suite

logger = logging.getLogger(__name__)


class SelftestPlugin(CommandPlugin):
    """Acceptance suite runner"""

    order = 60

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="selftest",
            version="1.0.0",
            description="Reduced acceptance suite",
        )

    def register(self, subparsers, parents) -> None:
        parser = self.add_command(
            subparsers, "selftest", self._run, parents, help="run the acceptance suite"
        )
        parser.add_argument(
            "--only",
            nargs="+",
            choices=list(GROUPS),
            metavar="GROUP",
            help=f"groups to run: {', '.join(GROUPS)}",
        )
        parser.add_argument(
            "--trials",
            type=int,
            default=10,
            help="random terms per property group (default: 10)",
        )
        parser.add_argument(
            "--oracle-terms",
            type=int,
            default=500,
            help="generated terms checked against the numeric oracle (default: 500)",
        )

    def _run(self, args: argparse.Namespace, context) -> SelftestPayload:
        seed = context.seed if context.seed is not None else context.params.seed
        results = run_suite(
            args.only,
            context.budget,
            context.params,
            seed=seed,
            trials=args.trials,
            oracle_terms=args.oracle_terms,
        )
        counts = {
            status: sum(1 for r in results if r.status == status)
            for status in (PASSED, FAILED, SKIPPED)
        }
        payload = SelftestPayload(
            passed=counts[PASSED],
            failed=counts[FAILED],
            skipped=counts[SKIPPED],
            cases=[SelftestCase(**r.to_dict()) for r in results],
        )
        logger.info("selftest: %s", counts)
        if payload.failed:
            raise SelftestFailed(
                f"{payload.failed} of {len(results)} selftest cases failed",
                payload.model_dump(mode="json", by_alias=True),
            )
        return payload
