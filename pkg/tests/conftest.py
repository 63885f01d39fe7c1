import numpy as np
import pytest

from vacuum_correlations.models.config import MinimizerConfig


@pytest.fixture
def coarse_minimizer():
    """Enough resolution to locate theta = pi/2 without the full 64 x 32 scan."""
    return MinimizerConfig(theta_points=16, phi_points=4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
