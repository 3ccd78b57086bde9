"""Pytest configuration and shared fixtures."""

import math
import sys
from pathlib import Path

import pytest
import structlog

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.model.interfaces import OrbitSpec, PhaseState, PotentialParams


@pytest.fixture
def reference_orbit():
    """R = 2, l = 1: the orbit carried by sigma = 3."""
    return OrbitSpec(R=2.0, l=1.0)


@pytest.fixture
def reference_params():
    """alpha = m = 1, sigma = 3 (calR = sqrt 3)."""
    return PotentialParams(alpha=1.0, mass=1.0, sigma=3.0)


@pytest.fixture
def reference_state():
    """Zero-energy state of the reference orbit at theta = 0."""
    return PhaseState(x=3.0, y=0.0, px=0.0, py=1.0 / (6.0 * math.sqrt(2.0)))


@pytest.fixture
def quartic_params():
    return PotentialParams(alpha=1.0, mass=1.0, sigma=0.0)


@pytest.fixture
def hyperbolic_params():
    return PotentialParams(alpha=1.0, mass=1.0, sigma=-1.0)


@pytest.fixture
def scenario_dict():
    """Minimal valid scenario document for the reference orbit."""
    return {
        "schema": 1,
        "name": "test_reference",
        "potential": {"alpha": 1.0, "sigma": 3.0, "mass": 1.0},
        "initial": {"orbit": {"R": 2.0, "l": 1.0}},
        "integration": {"rtol": 1e-10, "atol": 1e-12, "samples": 257, "max_step": 0.05},
        "tasks": ["analytic"],
        "output": {"formats": ["csv", "json"]},
        "seed": 11,
    }


@pytest.fixture(autouse=True)
def reset_logging():
    """Undo configure_logging() calls made by CLI tests."""
    yield
    structlog.reset_defaults()
