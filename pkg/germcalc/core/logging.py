"""Logging setup for the germcalc command line"""

from __future__ import annotations

import logging
import sys
from typing import Optional

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str = "WARNING", format_string: Optional[str] = None) -> None:
    """
    Configure root logging on standard error.

    Standard output is reserved for JSON payloads.
    """
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=format_string or DEFAULT_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    # sympy and mpmath are chatty at DEBUG
    for noisy in ("sympy", "mpmath"):
        logging.getLogger(noisy).setLevel(logging.WARNING)
