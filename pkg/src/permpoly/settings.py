"""Application settings with YAML + dotenv support."""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

ProfileName = Literal["ci", "extended"]


class ProfileBounds(BaseModel):
    """Grid bounds for the verification suites."""

    max_t: int = Field(default=9, ge=1, description="Largest t in trinomial and membership grids")
    max_n: int = Field(default=20, ge=1, description="Largest n = 2^s*t in the reduction grid")
    coeff_max_t: int = Field(default=8, ge=2, description="Largest t for the poly-powering coefficient oracle")
    closed_form_max_t: int = Field(default=10, ge=4, description="Largest t for closed-form equalities")
    exhaustive_alpha_max_t: int = Field(default=8, ge=1, description="Largest t with exhaustive alpha loops")
    max_k: int = Field(default=512, ge=1, description="Largest k for the Lucas grid")
    field_max_degree: int = Field(default=12, ge=1, description="Largest n in the field-axiom suite")
    random_polys: int = Field(default=1000, ge=1, description="Random trinomials per field in tester agreement")
    tester_max_degree: int = Field(default=8, ge=1, description="Largest n for brute-vs-hermite agreement")


PROFILES: dict[str, ProfileBounds] = {
    "ci": ProfileBounds(),
    "extended": ProfileBounds(max_t=11, max_n=24),
}


class Settings(BaseSettings):
    """Application settings loaded from YAML, env, and dotenv."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="PERMPOLY_",
        case_sensitive=False,
        extra="ignore",
    )

    # Execution
    workers: int | None = None  # None means os.cpu_count()
    profile: ProfileName = "ci"

    # Field arithmetic
    table_max_degree: int = 20  # Largest n with log/antilog tables

    # Resource guards
    brute_max_degree: int = 28
    hermite_max_degree: int = 12
    triples_max_t: int = 12
    trith_max_t: int = 11

    # Reduction grid
    reduction_brute_budget: int = 1 << 26  # Element evaluations per (s, t) cell
    reduction_brute_max_n: int = 20  # Exhaustive cells up to this n run brute force whatever the budget
    reduction_exhaustive_max_t: int = 6
    audit_binomial_max_t: int = 6

    # Sampling
    samples: int = 64
    seed: int = 20160401

    # Logging
    log_json: bool = False
    log_level: str = "info"

    def resolved_workers(self) -> int:
        """Return the worker count, falling back to machine parallelism."""
        return self.workers if self.workers and self.workers > 0 else (os.cpu_count() or 1)

    def bounds(self, profile: str | None = None) -> ProfileBounds:
        """Return the suite bounds for a profile (default: configured profile)."""
        name = profile or self.profile
        if name not in PROFILES:
            available = ", ".join(PROFILES)
            raise ValueError(f"Unknown profile: {name}. Available: {available}")
        return PROFILES[name]

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Customize settings sources to include YAML."""
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            YamlSettingsSource(settings_cls),
            file_secret_settings,
        )


class YamlSettingsSource(PydanticBaseSettingsSource):
    """Load settings from permpoly.yaml."""

    def get_field_value(self, field: Any, field_name: str) -> tuple[Any, str, bool]:
        """Get field value from YAML config."""
        yaml_data = self._load_yaml()
        if field_name in yaml_data:
            return yaml_data[field_name], field_name, False
        return None, field_name, False

    def __call__(self) -> dict[str, Any]:
        """Return all settings from YAML."""
        return self._load_yaml()

    def _load_yaml(self) -> dict[str, Any]:
        """Load and parse YAML config file."""
        config_paths = [
            Path("permpoly.yaml"),
            Path("permpoly.yml"),
            Path.home() / ".config" / "permpoly" / "config.yaml",
        ]

        for path in config_paths:
            if path.exists():
                with open(path) as f:
                    data: dict[str, Any] = yaml.safe_load(f) or {}
                    return data

        return {}


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def clear_settings_cache() -> None:
    """Clear the settings cache (useful for testing)."""
    get_settings.cache_clear()
