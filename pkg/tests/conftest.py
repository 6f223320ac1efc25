"""Shared fixtures for the germcalc test suite"""

import io
import json

import numpy as np
import pytest

from germcalc.cli import run
from germcalc.core.config import Budget, CheckParams, Settings
from germcalc.terms import parse


@pytest.fixture
def budget():
    return Budget()


@pytest.fixture
def settings():
    return Settings(_env_file=None)


@pytest.fixture
def params():
    """Check parameters small enough for unit tests"""
    return CheckParams(n_radial=6, n_angular=3, max_pairs=500, precision_bits=128)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def term():
    return parse


@pytest.fixture
def cli():
    """Run germcalc in-process; returns (exit code, parsed JSON output)"""

    def invoke(*argv):
        out = io.StringIO()
        code = run(list(argv), stdout=out)
        text = out.getvalue()
        return code, json.loads(text) if text.strip() else None

    return invoke
