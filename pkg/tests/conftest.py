"""
Pytest configuration and fixtures for cavity-scatter tests.
"""

import json
import logging
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

from billiard import GreenEvaluator, Rectangle
from resonance import ResonatorSystem

ANTENNA_RADIUS = 5e-4
INTERIOR_POINT = (0.1117, 0.0731)


@pytest.fixture
def rect():
    """The 0.3 x 0.2 m cavity used throughout the tests."""
    return Rectangle(0.3, 0.2)


@pytest.fixture
def x0():
    """Antenna point well inside the cavity and off every symmetry line."""
    return INTERIOR_POINT


@pytest.fixture
def evaluator(rect, x0):
    """Green evaluator supporting |k^2| up to 1e4 1/m^2."""
    return GreenEvaluator.build(rect, x0, 25.0 * 1.0e4)


@pytest.fixture
def system(rect, x0):
    """Scattering model for real wavenumbers up to 100 1/m."""
    return ResonatorSystem.build(rect, x0, ANTENNA_RADIUS, 100.0)


@pytest.fixture
def rng():
    """Fixed random stream."""
    return np.random.default_rng(12345)


@pytest.fixture
def run_config_file(tmp_path):
    """Write a config JSON and return its path."""
    def _write(document, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers installed by setup_logging() so tests do not write to each other's log files."""
    yield
    root = logging.getLogger()
    for handler in [h for h in root.handlers if type(h) in (logging.FileHandler, logging.StreamHandler)]:
        root.removeHandler(handler)
        handler.close()
