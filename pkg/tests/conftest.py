"""Shared fixtures: fast solver configurations and a seeded generator."""

import numpy as np
import pytest

from traitfront.config import default_config
from traitfront.grid import HalfPlaneGrid


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


@pytest.fixture
def small_cfg():
    """Headline geometry at reduced resolution: fast limit-equation solves."""
    return default_config(
        grid=HalfPlaneGrid(-1.0, 3.0, 2.5, 120, 60),
        front_guard="off",
    )


@pytest.fixture
def rd_cfg():
    """Small finite-epsilon configuration for the reaction-diffusion solver."""
    return default_config(
        grid=HalfPlaneGrid(-1.0, 2.0, 1.5, 90, 45),
        epsilon=0.1,
        t_final=0.5,
        cadence=0.25,
        front_guard="off",
    )
