"""Base configuration module with type hints and validation."""

from typing import Optional, Tuple, Type
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class BaseConfig(BaseSettings):
    """Base configuration class with validation.

    Values come from constructor arguments only: command-line flags are the
    single source, so no environment variable or file can change a result.
    """

    model_config = SettingsConfigDict(case_sensitive=True, frozen=True, extra="forbid")

    PROFILE: str = Field(default="quick", description="Verification profile (quick/full)")

    # Logging settings
    LOG_LEVEL: str = Field(default="WARNING", description="Logging level")
    LOG_FORMAT: str = Field(default="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    LOG_FILE: Optional[str] = Field(None, description="Log file path")

    # Quadrature settings
    ABS_TOL: float = Field(default=1e-10, gt=0.0, le=1e-2, description="Inversion tolerance")
    SMALL_Z_CUT: float = Field(default=1e-6, gt=0.0, description="Series patch radius at z = 0")
    MAX_NODES: int = Field(default=200_000, ge=100, description="Quadrature node budget")

    # Series settings
    GAMMA_TERMS: int = Field(default=30, ge=1, description="Terms in the Hardy relation")
    SEQUENCE_COUNT: int = Field(default=61, ge=2, le=501, description="Bell/Gould table length")
    TAYLOR_MAX_M: int = Field(default=120, ge=1, le=500, description="Largest partial-sum order")

    # Monte Carlo settings
    MC_SAMPLES: int = Field(default=100_000, ge=1, description="Draws per n for moment checks")
    KS_SAMPLES: int = Field(default=100_000, ge=1, description="Draws for KS comparisons")
    CLT_SAMPLES: int = Field(default=50_000, ge=10_000, description="Draws for the CLT check")
    MC_SEED: int = Field(default=20230329, ge=0, lt=2**64, description="Base seed")
    MC_WORKERS: int = Field(default=1, ge=1, description="Sampling threads")
    MC_MAX_N: int = Field(default=8, ge=1, description="Largest n in the moment sweep")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        """Restrict settings to constructor arguments."""
        return (init_settings,)

    @field_validator("PROFILE")
    @classmethod
    def validate_profile(cls, v: str) -> str:
        """Validate profile name."""
        if v not in ("quick", "full"):
            raise ValueError("PROFILE must be one of: quick, full")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate logging level."""
        valid_levels = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of: {', '.join(valid_levels)}")
        return v.upper()

    def is_full(self) -> bool:
        """Check if this is the full acceptance profile."""
        return self.PROFILE == "full"
