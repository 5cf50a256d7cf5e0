"""Quick verification profile."""

from .base import BaseConfig, Field


class QuickProfile(BaseConfig):
    """Reduced sample counts; the whole suite fits in about a minute."""

    PROFILE: str = "quick"

    MC_SAMPLES: int = Field(default=100_000, ge=1, description="Draws per n for moment checks")
    KS_SAMPLES: int = Field(default=100_000, ge=1, description="Draws for KS comparisons")
    CLT_SAMPLES: int = Field(default=20_000, ge=10_000, description="Draws for the CLT check")
