"""Points of the Riemann surface of the logarithm in the Log-chart"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class LPoint:
    """
    The point exp(logmod + i*arg) of the surface.

    arg is unbounded: points whose args differ by 2*pi lie on different sheets.
    """

    logmod: float
    arg: float

    @property
    def modulus(self) -> float:
        """|x|, or inf when it overflows a float"""
        try:
            return math.exp(self.logmod)
        except OverflowError:
            return math.inf

    def distance(self, other: "LPoint") -> float:
        """d(x, y) = |Log x - Log y|"""
        return math.hypot(self.logmod - other.logmod, self.arg - other.arg)

    def conjugate(self) -> "LPoint":
        return LPoint(self.logmod, -self.arg)

    def project(self) -> complex:
        """Image in C minus the origin"""
        r = self.modulus
        return complex(r * math.cos(self.arg), r * math.sin(self.arg))

    def to_dict(self) -> dict[str, Any]:
        return {"logmod": self.logmod, "arg": self.arg}

    @classmethod
    def parse(cls, text: str) -> "LPoint":
        """Read "logmod:arg" """
        logmod, sep, arg = text.partition(":")
        if not sep:
            raise ValueError(f"expected LOGMOD:ARG, got {text!r}")
        return cls(float(logmod), float(arg))


def real_point(modulus: float) -> LPoint:
    """The point of the positive real axis with the given modulus"""
    return LPoint(math.log(modulus), 0.0)


def distance_to_one(point: LPoint) -> float:
    """d(x, 1)"""
    return math.hypot(point.logmod, point.arg)
