"""Per-invocation state shared by the command handlers"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core.config import Budget, CheckParams, Settings


@dataclass
class CommandContext:
    settings: Settings
    params: CheckParams = field(default_factory=CheckParams)
    plain: bool = False
    seed: Optional[int] = None
    dump: Optional[str] = None

    @property
    def budget(self) -> Budget:
        return self.settings.budget()

    @property
    def precision(self) -> int:
        return self.settings.precision_bits

    def rng(self) -> np.random.Generator:
        """Generator seeded by --seed, else by the check parameters"""
        seed = self.seed if self.seed is not None else self.params.seed
        return np.random.default_rng(seed)
