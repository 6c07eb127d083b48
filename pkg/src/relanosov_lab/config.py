# SPDX-License-Identifier: CC-BY-SA-4.0

"""Process settings from the environment and per-run TOML configuration."""

import math
import tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Self

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from relanosov_lab.cusp import DepthFunction

Certifier = Literal["divergence", "weakdom", "transversality", "dynamics"]


class Settings(BaseSettings):
    """Process settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="RELANOSOV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    log_level: str = "INFO"
    workers: int = 1
    output_dir: str = "reports"
    run_timeout: int = 600  # seconds

    @field_validator("workers", "run_timeout")
    @classmethod
    def validate_positive(cls, v: int, info: ValidationInfo) -> int:
        if v <= 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("run_timeout")
    @classmethod
    def validate_run_timeout(cls, v: int) -> int:
        if v > 3600:
            raise ValueError("run_timeout cannot exceed 3600 seconds")
        return v


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


class DepthSpec(BaseModel):
    """Depth function f: exponential base^k or an explicit table."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["exponential", "table"] = "exponential"
    base: int = Field(default=2, ge=2)
    table: list[float] | None = None

    @model_validator(mode="after")
    def check_table(self) -> Self:
        if self.kind == "table" and not self.table:
            raise ValueError("a table depth function needs a non-empty table")
        return self

    def to_depth_function(self) -> DepthFunction:
        if self.kind == "table":
            return DepthFunction.from_table(self.table or [])
        return DepthFunction.exponential(self.base)


class TruncationSpec(BaseModel):
    """Truncation of the cusped space: Cayley radius R and horoball depth L."""

    model_config = ConfigDict(extra="forbid")

    radius: int = Field(default=4, ge=0)
    levels: int | None = Field(default=None, ge=1)


class SamplerSpec(BaseModel):
    """Limit-set and sequence sampling."""

    model_config = ConfigDict(extra="forbid")

    directions: int | None = Field(default=None, ge=1)  # default 2 * rank
    geodesic_length: int = Field(default=16, ge=4)
    peripheral_powers: list[int] = Field(default_factory=lambda: [2**n for n in range(21, 26)])
    conjugators: list[str] = Field(default_factory=list)
    max_peripheral_run: int = Field(default=3, ge=1)
    max_attempts: int = Field(default=100, ge=1)
    sequence_word: str = "a"
    sequence_length: int = Field(default=30, ge=2)
    test_subspaces: int = Field(default=50, ge=1)

    @field_validator("peripheral_powers")
    @classmethod
    def validate_powers(cls, v: list[int]) -> list[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("peripheral_powers must be a non-empty list of positive integers")
        return v


class Tolerances(BaseModel):
    """Thresholds of the certifiers and the decision table."""

    model_config = ConfigDict(extra="forbid")

    gap_threshold: float = math.log(10)
    transversality: float = Field(default=1e-6, gt=0)
    cluster_radius: float = Field(default=0.05, gt=0)
    no_gap: float = Field(default=1e-8, ge=0)
    domination_slack: float = Field(default=0.05, ge=0, lt=1)
    dynamics_margin: float = Field(default=0.05, gt=0)
    monotone_from: int | None = Field(default=None, ge=1)


class RunConfig(BaseModel):
    """One batch run, read from a TOML file."""

    model_config = ConfigDict(extra="forbid")

    group: str | None = None
    group_file: Path | None = None
    seed: int = Field(ge=0, lt=2**64)
    k: int = Field(default=1, ge=1)
    certifier: Certifier = "divergence"
    r_max: int = Field(default=6, ge=1)
    n_max: int = Field(default=256, ge=2)
    depth: DepthSpec = Field(default_factory=DepthSpec)
    truncation: TruncationSpec = Field(default_factory=TruncationSpec)
    sampler: SamplerSpec = Field(default_factory=SamplerSpec)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output_dir: Path | None = None
    workers: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_group_source(self) -> Self:
        if (self.group is None) == (self.group_file is None):
            raise ValueError("set exactly one of 'group' and 'group_file'")
        return self

    def canonical(self) -> dict[str, Any]:
        """JSON-compatible dump used for report hashing."""
        return self.model_dump(mode="json", exclude={"output_dir", "workers"})


def load_run_config(path: Path | str, overrides: dict[str, Any] | None = None) -> RunConfig:
    """Read a run configuration; ``overrides`` replace top-level keys.

    A relative ``group_file`` is resolved against the config file's directory.

    Raises:
        FileNotFoundError: If the file does not exist.
        tomllib.TOMLDecodeError: On malformed TOML.
        pydantic.ValidationError: On invalid values.
    """
    path = Path(path)
    with path.open("rb") as handle:
        data = tomllib.load(handle)
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    config = RunConfig.model_validate(data)
    if config.group_file is not None and not config.group_file.is_absolute():
        config = config.model_copy(update={"group_file": path.parent / config.group_file})
    return config
