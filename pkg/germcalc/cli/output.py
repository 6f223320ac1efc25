"""Rendering of payloads and error envelopes"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional, TextIO

import pandas as pd
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from ..core.errors import GermcalcError, UsageError
from .schemas import CommandResult

logger = logging.getLogger(__name__)


def error_result(error: GermcalcError) -> CommandResult:
    data = error.to_dict()
    diagnostics = [f"{k}: {v}" for k, v in data.get("details", {}).items()]
    return CommandResult(
        status="error",
        code=error.code,
        message=error.message,
        payload=getattr(error, "payload", None),
        diagnostics=diagnostics,
    )


def render_json(model: BaseModel, stream: TextIO) -> None:
    stream.write(model.model_dump_json(by_alias=True, exclude_none=False))
    stream.write("\n")


def render_plain(model: BaseModel, stream: TextIO) -> None:
    """Human-readable rendering: a table for reports, key: value lines otherwise"""
    console = Console(file=stream, highlight=False, soft_wrap=True)
    data = model.model_dump(mode="json", by_alias=True)

    witnesses = data.pop("witnesses", None)
    if "verdict" in data or "cases" in data:
        cases = data.pop("cases", None)
        table = Table(show_header=False, box=None)
        for key, value in data.items():
            table.add_row(key, _plain_value(value))
        console.print(table)
        if cases:
            case_table = Table("case", "status", "detail")
            for case in cases:
                case_table.add_row(case["name"], case["status"], case["detail"])
            console.print(case_table)
        for witness in witnesses or []:
            console.print(f"witness: {_plain_value(witness)}")
        return

    for key, value in data.items():
        console.print(f"{key}: {_plain_value(value)}")


def _plain_value(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def write_dump(rows: list[dict[str, float]], path: Optional[str]) -> None:
    """Evaluated samples of a check as CSV"""
    if not path:
        return
    try:
        pd.DataFrame(rows).to_csv(Path(path), index=False)
    except OSError as e:
        raise UsageError(f"Cannot write samples to {path}: {str(e)}")
    logger.info("wrote %d samples to %s", len(rows), path)
