"""Expression corpora for the oracle cross-checks and property tests"""

from __future__ import annotations

import logging
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..core.errors import TermSyntaxError, UsageError
from ..terms.nodes import (
    X_TERM,
    Add,
    Exp,
    GermTerm,
    Log,
    Mul,
    Pow,
    Recip,
    const,
    tower_height,
)
from ..terms.parser import parse

logger = logging.getLogger(__name__)

_EXPONENTS = (Fraction(1, 2), Fraction(2), Fraction(3), Fraction(3, 2), Fraction(1, 3))
_COEFFICIENTS = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3))


def default_corpus_path() -> Path:
    return Path(str(resources.files("germcalc.oracle") / "data" / "corpus.txt"))


def load_corpus(path: Optional[Union[str, Path]] = None) -> list[GermTerm]:
    """One expression per line; blank lines and text after # are ignored"""
    path = Path(path) if path is not None else default_corpus_path()
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UsageError(f"Cannot read corpus {path}: {str(e)}")

    terms = []
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            terms.append(parse(text))
        except TermSyntaxError as e:
            raise UsageError(f"{path}:{number}: {e.message}") from e
    logger.debug("loaded %d corpus terms from %s", len(terms), path)
    return terms


class TermGenerator:
    """
    Random eventually positive terms.

    ``large`` terms tend to +infinity, so Log and fractional Pow only ever
    receive positive arguments; ``positive`` terms add bounded and small
    germs built from large ones.
    """

    def __init__(self, rng: np.random.Generator, max_depth: int, max_tower: int):
        self.rng = rng
        self.max_depth = max_depth
        self.max_tower = max_tower

    def _pick(self, options: tuple) -> object:
        return options[int(self.rng.integers(len(options)))]

    def _coefficient(self) -> GermTerm:
        return const(self._pick(_COEFFICIENTS))

    def large(self, depth: int, tower: int) -> GermTerm:
        if depth <= 0:
            return X_TERM
        choice = int(self.rng.integers(7))
        if choice == 0:
            return X_TERM
        if choice == 1:
            return Add((self.large(depth - 1, tower), self.positive(depth - 1, tower)))
        if choice == 2:
            return Mul((self.large(depth - 1, tower), self.large(depth - 1, tower)))
        if choice == 3:
            return Pow(self.large(depth - 1, tower), self._pick(_EXPONENTS))
        if choice == 4:
            return Mul((self._coefficient(), self.large(depth - 1, tower)))
        if tower <= 0:
            return self.large(depth - 1, tower)
        if choice == 5:
            return Exp(self.large(depth - 1, tower - 1))
        return Log(self.large(depth - 1, tower - 1))

    def positive(self, depth: int, tower: int) -> GermTerm:
        if depth <= 0:
            return self._coefficient()
        choice = int(self.rng.integers(5))
        if choice == 0:
            return self.large(depth, tower)
        if choice == 1:
            return Recip(self.large(depth - 1, tower))
        if choice == 2:
            return Add((self._coefficient(), Recip(self.large(depth - 1, tower))))
        if choice == 3:
            left = self.positive(depth - 1, tower)
            return Mul((left, self.positive(depth - 1, tower)))
        return self._coefficient()

    def generate(self, kind: str) -> GermTerm:
        while True:
            depth = int(self.rng.integers(1, self.max_depth + 1))
            term = (
                self.large(depth, self.max_tower)
                if kind == "large"
                else self.positive(depth, self.max_tower)
            )
            if tower_height(term) <= self.max_tower:
                return term


def generate_terms(
    rng: np.random.Generator,
    count: int,
    max_depth: int = 4,
    max_tower: int = 3,
    kind: str = "positive",
) -> list[GermTerm]:
    """count random terms; kind "large" keeps them infinitely increasing"""
    if kind not in ("large", "positive"):
        raise UsageError(f"unknown term kind {kind!r}")
    generator = TermGenerator(rng, max_depth, max_tower)
    return [generator.generate(kind) for _ in range(count)]
