"""
Command Plugin System for germcalc

Each feature subpackage (terms, asymptotics, domains, ...) contributes its CLI
subcommands through a plugin defined in its ``plugin`` module.
"""

from __future__ import annotations

import argparse
import importlib
import inspect
import logging
import pkgutil
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import ModuleType
from typing import Any, Callable, Optional, Type

logger = logging.getLogger(__name__)

API_VERSION = "1"

# handler(args, context) -> payload model from germcalc.cli.schemas
CommandHandler = Callable[[argparse.Namespace, Any], Any]


class PluginStatus(Enum):
    """Plugin status enumeration"""

    INACTIVE = "inactive"
    ACTIVE = "active"
    ERROR = "error"


@dataclass
class PluginMetadata:
    """Plugin metadata structure"""

    name: str
    version: str
    description: str
    api_version: str = API_VERSION
    commands: list[str] = field(default_factory=list)
    status: PluginStatus = PluginStatus.INACTIVE


class CommandPlugin(ABC):
    """Base plugin interface that all command plugins must implement"""

    # lower runs first; decides subcommand order in --help
    order = 100

    def __init__(self) -> None:
        self._metadata: Optional[PluginMetadata] = None

    @property
    def metadata(self) -> PluginMetadata:
        """Return plugin metadata"""
        if self._metadata is None:
            self._metadata = self.describe()
        return self._metadata

    @abstractmethod
    def describe(self) -> PluginMetadata:
        """Build the plugin metadata"""

    @abstractmethod
    def register(
        self,
        subparsers: argparse._SubParsersAction,
        parents: list[argparse.ArgumentParser],
    ) -> None:
        """
        Add this plugin's subcommands.

        Every leaf parser must set ``handler`` via ``set_defaults``.
        """

    def add_command(
        self,
        subparsers: argparse._SubParsersAction,
        name: str,
        handler: CommandHandler,
        parents: list[argparse.ArgumentParser],
        help: str = "",
    ) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(name, help=help, parents=parents)
        parser.set_defaults(handler=handler)
        self.metadata.commands.append(name)
        return parser


class PluginManager:
    """Manages plugin discovery and registry"""

    def __init__(self) -> None:
        self._plugins: dict[str, CommandPlugin] = {}

    def register_plugin(self, plugin_class: Type[CommandPlugin]) -> CommandPlugin:
        """Register a new plugin"""
        plugin = plugin_class()
        metadata = plugin.metadata
        if metadata.api_version != API_VERSION:
            metadata.status = PluginStatus.ERROR
            raise ValueError(
                f"Plugin API version {metadata.api_version} is not compatible"
            )
        if metadata.name in self._plugins:
            raise ValueError(f"Plugin {metadata.name} is already registered")
        self._plugins[metadata.name] = plugin
        metadata.status = PluginStatus.ACTIVE
        return plugin

    def list_plugins(self) -> dict[str, PluginMetadata]:
        """List all registered plugins"""
        return {name: plugin.metadata for name, plugin in self._plugins.items()}

    def discover_plugins(self, package: ModuleType) -> list[Type[CommandPlugin]]:
        """Discover ``<subpackage>.plugin`` modules below a package"""
        discovered: list[Type[CommandPlugin]] = []

        for module_info in pkgutil.iter_modules(package.__path__):
            if not module_info.ispkg:
                continue
            module_name = f"{package.__name__}.{module_info.name}.plugin"
            try:
                module = importlib.import_module(module_name)
            except ModuleNotFoundError as e:
                if e.name != module_name:
                    raise
                continue

            for _, obj in inspect.getmembers(module, inspect.isclass):
                if (
                    issubclass(obj, CommandPlugin)
                    and obj is not CommandPlugin
                    and obj.__module__ == module.__name__
                ):
                    discovered.append(obj)

        discovered.sort(key=lambda cls: (cls.order, cls.__name__))
        logger.debug("Discovered plugins: %s", [cls.__name__ for cls in discovered])
        return discovered

    def load_all(self, package: ModuleType) -> list[CommandPlugin]:
        return [self.register_plugin(cls) for cls in self.discover_plugins(package)]

    def build_commands(
        self,
        subparsers: argparse._SubParsersAction,
        parents: list[argparse.ArgumentParser],
    ) -> None:
        """Let every active plugin register its subcommands"""
        for plugin in self._plugins.values():
            if plugin.metadata.status == PluginStatus.ACTIVE:
                plugin.register(subparsers, parents)


# ---------------------------------------------------------------------------
# Argument types shared by the plugins
# ---------------------------------------------------------------------------


def positive_rational(text: str) -> Fraction:
    """argparse type for a positive rational such as 3 or 1/2"""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} is not positive")
    return value


def add_expression(
    parser: argparse.ArgumentParser, name: str = "expr", help: str = ""
) -> None:
    parser.add_argument(name, metavar=name.upper(), help=help or "germ expression")
