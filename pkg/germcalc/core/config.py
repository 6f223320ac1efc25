# germcalc - Core Configuration
# Centralized configuration management using Pydantic settings

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import UsageError

VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """
    Engine settings using Pydantic BaseSettings.

    Loaded from GERMCALC_* environment variables and an optional .env file;
    the CLI overrides individual fields from its global flags.
    """

    # Numeric evaluation
    precision_bits: int = Field(
        default=256, description="Starting precision for numeric evaluation"
    )
    max_precision_bits: int = Field(
        default=4096, description="Ceiling for precision escalation"
    )

    # Expansion engine
    expansion_order: int = Field(
        default=4, description="Initial number of retained expansion terms"
    )
    max_expansion_order: int = Field(
        default=32, description="Largest expansion order tried before giving up"
    )
    guard_slack: int = Field(
        default=2, description="Additive slack of the level/eh recursion guard"
    )
    zero_test_extra_levels: int = Field(
        default=1, description="Extra exp_j(10) sample levels of the zero test"
    )
    standard_grid_size: int = Field(
        default=8, description="Decades tested by the standard-domain growth test"
    )
    sympy_fallback: bool = Field(
        default=True, description="Consult sympy.limit when the expansion gives up"
    )

    log_level: str = Field(default="WARNING", description="Application log level")

    model_config = SettingsConfigDict(
        env_prefix="GERMCALC_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("precision_bits", "max_precision_bits")
    @classmethod
    def validate_precision(cls, v: int) -> int:
        """Precision must leave room for guard bits."""
        if v < 64:
            raise ValueError("precision must be at least 64 bits")
        return v

    @field_validator("expansion_order", "max_expansion_order")
    @classmethod
    def validate_order(cls, v: int) -> int:
        if v < 1:
            raise ValueError("expansion order must be positive")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        if v.upper() not in VALID_LOG_LEVELS:
            raise ValueError(f"Log level must be one of: {list(VALID_LOG_LEVELS)}")
        return v.upper()

    def budget(self) -> "Budget":
        """Hashable snapshot of the fields the symbolic engine depends on."""
        return Budget(
            precision_bits=self.precision_bits,
            max_precision_bits=self.max_precision_bits,
            expansion_order=self.expansion_order,
            max_expansion_order=self.max_expansion_order,
            guard_slack=self.guard_slack,
            zero_test_extra_levels=self.zero_test_extra_levels,
            standard_grid_size=self.standard_grid_size,
            sympy_fallback=self.sympy_fallback,
        )


@dataclass(frozen=True)
class Budget:
    """Immutable engine budget; used as part of memoization keys"""

    precision_bits: int = 256
    max_precision_bits: int = 4096
    expansion_order: int = 4
    max_expansion_order: int = 32
    guard_slack: int = 2
    zero_test_extra_levels: int = 1
    standard_grid_size: int = 8
    sympy_fallback: bool = True

    def orders(self) -> list[int]:
        """Expansion orders tried in turn, doubling up to the maximum."""
        orders = []
        order = self.expansion_order
        while order < self.max_expansion_order:
            orders.append(order)
            order *= 2
        orders.append(self.max_expansion_order)
        return orders

    def precisions(self) -> list[int]:
        precisions = []
        prec = self.precision_bits
        while prec < self.max_precision_bits:
            precisions.append(prec)
            prec *= 2
        precisions.append(self.max_precision_bits)
        return precisions


class CheckThresholds(BaseModel):
    """Pass/fail thresholds of the continuation checks"""

    model_config = ConfigDict(extra="forbid")

    expansive: float = Field(default=1e-3, gt=0)
    angle_tolerance: float = Field(default=1e-3, gt=0)
    band_factor: float = Field(default=2.0, ge=1)
    n_bands: int = Field(default=4, ge=2)
    unit_decay: float = Field(default=0.05, gt=0, lt=1)


class CheckParams(BaseModel):
    """Single configuration record for the sampled continuation checks"""

    model_config = ConfigDict(extra="forbid")

    start_radius: float = Field(default=10.0, gt=0)
    radial_span: float = Field(default=4.0, gt=0, description="Span of log-modulus")
    n_radial: int = Field(default=8, ge=2)
    n_angular: int = Field(default=4, ge=1)
    shrink: float = Field(default=0.1, gt=0, lt=1)
    precision_bits: int = Field(default=256, ge=64)
    arg_cap: Optional[float] = Field(default=None, gt=0)
    max_pairs: int = Field(default=4000, ge=1)
    seed: int = 0
    dlipschitz_normalization: Literal["x", "log", "log_2"] = "x"
    distortion_radius: Optional[float] = Field(default=None, gt=0)
    thresholds: CheckThresholds = Field(default_factory=CheckThresholds)


def load_check_params(path: str | Path, **overrides: Any) -> CheckParams:
    """Load check parameters from a JSON or YAML file."""
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise UsageError(f"Cannot read check parameters from {path}: {str(e)}")
    if not isinstance(raw, dict):
        raise UsageError(f"Check parameters in {path} must be a mapping")
    raw.update(overrides)
    try:
        return CheckParams.model_validate(raw)
    except ValidationError as e:
        raise UsageError(f"Invalid check parameters in {path}: {e}")


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached engine settings.

    Uses lru_cache so the environment is read once per process.
    """
    return Settings()


def validate_configuration(settings: Optional[Settings] = None) -> dict[str, list[str]]:
    """Validate configuration and environment setup."""
    settings = settings or get_settings()

    errors = []
    warnings = []

    if settings.max_precision_bits < settings.precision_bits:
        errors.append("max_precision_bits must not be below precision_bits")

    if settings.max_expansion_order < settings.expansion_order:
        errors.append("max_expansion_order must not be below expansion_order")

    if settings.guard_slack < 1:
        warnings.append("guard_slack below 1 makes level recursion trip early")

    if not settings.sympy_fallback:
        warnings.append("sympy fallback disabled; more limits will be Undecided")

    return {"errors": errors, "warnings": warnings}
