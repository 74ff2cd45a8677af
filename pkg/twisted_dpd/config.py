"""
Configuration management for the twisted-dpd tooling using Pydantic v2.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

Subcommand = Literal[
    "params",
    "keygen",
    "pk",
    "exchange",
    "attack",
    "bench",
    "circulant-stats",
    "verify-examples",
]


class DPDSettings(BaseSettings):
    """Process-wide settings, read from TWISTED_DPD_* environment variables."""

    default_seed: int = Field(default=20240601, ge=0, lt=2**64)

    # Expected b draws are q/(q-1); hitting the cap means a bug, not bad luck.
    b_sample_cap: int = Field(default=64, ge=1)

    # Largest group order 2n for which the cocycle identity is checked exhaustively.
    cocycle_max_order: int = Field(default=512, ge=2)

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="WARNING")
    debug: bool = Field(default=False)

    model_config = SettingsConfigDict(
        env_prefix="TWISTED_DPD_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: Optional[str]) -> Optional[str]:
        if isinstance(v, str):
            return v.strip().upper()
        return v

    @property
    def effective_log_level(self) -> str:
        return "DEBUG" if self.debug else self.log_level


class RunConfig(BaseModel):
    """One CLI invocation, fully resolved so it can be replayed."""

    subcommand: Subcommand
    n: Optional[int] = Field(default=None, ge=1)
    q: Optional[int] = Field(default=None, ge=3)
    lam: Optional[int] = Field(default=None, ge=1, description="Cocycle parameter override")
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    trials: Optional[int] = Field(default=None, ge=1)
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None

    @field_validator("input_path", "output_path", mode="before")
    @classmethod
    def normalize_empty_path(cls, v: Optional[str | Path]) -> Optional[str | Path]:
        if isinstance(v, str) and not v.strip():
            return None
        return v

    @field_validator("input_path", mode="after")
    @classmethod
    def validate_input_exists(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.exists():
            raise ValueError(f"Path does not exist: {v}")
        return v

    @model_validator(mode="after")
    def default_seed(self) -> "RunConfig":
        if self.seed is None:
            self.seed = load_settings().default_seed
        return self

    def describe(self) -> str:
        parts = [self.subcommand]
        for name in ("n", "q", "lam", "seed", "trials", "input_path", "output_path"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        return " ".join(parts)


def load_settings(**kwargs) -> DPDSettings:
    """Load settings from the environment with optional overrides."""
    return DPDSettings(**kwargs)
