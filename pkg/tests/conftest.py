"""Shared fixtures."""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import get_config  # noqa: E402
from monitoring.metrics import metrics_collector  # noqa: E402
from nestexp.charfn_inversion import QuadratureConfig  # noqa: E402


@pytest.fixture
def quick_config():
    """Quick verification profile."""
    return get_config("quick")


@pytest.fixture
def quadrature():
    """Factory for default inversion settings at index n."""
    def make(n: int, **overrides) -> QuadratureConfig:
        return QuadratureConfig.for_index(n, **overrides)
    return make


@pytest.fixture(autouse=True)
def clean_metrics():
    """Start every test with an empty metrics collector."""
    metrics_collector.reset()
    yield
    metrics_collector.reset()


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)
