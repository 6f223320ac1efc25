"""
CLI Plugin

``germcalc schema``: the JSON Schemas of every command payload.
"""

from __future__ import annotations

import argparse

from ..core.errors import UsageError
from ..core.plugins import CommandPlugin, PluginMetadata
from .schemas import PAYLOAD_MODELS, SchemaPayload


class SchemaPlugin(CommandPlugin):
    order = 90

    def describe(self) -> PluginMetadata:
        return PluginMetadata(
            name="cli",
            version="1.0.0",
            description="Published payload schemas",
        )

    def register(self, subparsers, parents) -> None:
        parser = self.add_command(
            subparsers, "schema", self._schema, parents, help="payload JSON Schemas"
        )
        parser.add_argument(
            "command_name",
            nargs="?",
            metavar="COMMAND",
            help="only the schema of this command",
        )

    def _schema(self, args: argparse.Namespace, context) -> SchemaPayload:
        models = PAYLOAD_MODELS
        if args.command_name is not None:
            if args.command_name not in models:
                raise UsageError(f"no payload schema for {args.command_name!r}")
            models = {args.command_name: models[args.command_name]}
        return SchemaPayload(
            schemas={
                name: model.model_json_schema(by_alias=True)
                for name, model in models.items()
            }
        )
