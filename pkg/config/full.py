"""Full acceptance profile."""

from .base import BaseConfig, Field


class FullProfile(BaseConfig):
    """Acceptance-scale sample counts (10⁶ draws per n)."""

    PROFILE: str = "full"

    MC_SAMPLES: int = Field(default=1_000_000, ge=100_000, description="Draws per n")
    KS_SAMPLES: int = Field(default=100_000, ge=10_000, description="Draws for KS comparisons")
    CLT_SAMPLES: int = Field(default=50_000, ge=10_000, description="Draws for the CLT check")
    MC_WORKERS: int = Field(default=4, ge=1, description="Sampling threads")
