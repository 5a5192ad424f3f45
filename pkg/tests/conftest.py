"""
Pytest configuration and shared fixtures for the anyon laboratory tests.
"""

import json

import numpy as np
import pytest

pytest_plugins = ["pytest_django"]


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(0)


@pytest.fixture
def gaussian():
    """Truncated Gaussian condensate on the unit disc."""
    from manybody import TruncatedGaussian

    return TruncatedGaussian(support_radius=1.0)


@pytest.fixture
def grid():
    """Small spectral grid."""
    from meanfield import Grid2D

    return Grid2D(L=20.0, n=64)


@pytest.fixture
def gaussian_field(grid):
    """Normalized isotropic Gaussian of width 1 on ``grid``."""
    from meanfield import ComplexField2D

    field = ComplexField2D.from_function(grid, lambda x, y: np.exp(-0.5 * (x**2 + y**2)))
    return field.normalized()


@pytest.fixture
def pair_params():
    """Pair parameters well inside the admissible domain."""
    from twobody import AnyonPairParams

    return AnyonPairParams(alpha=0.1, R=0.01, b=0.2, g=1.0)


@pytest.fixture
def api_client():
    """API client for testing endpoints."""
    from rest_framework.test import APIClient

    return APIClient()


@pytest.fixture
def lab_output(settings, tmp_path):
    """Point the default output directory at a temporary path."""
    settings.ANYONLAB = {**settings.ANYONLAB, "OUTPUT_DIR": str(tmp_path / "results")}
    return tmp_path / "results"


@pytest.fixture
def write_config(tmp_path):
    """Write a config dict to a JSON file and return its path."""

    def _write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write


@pytest.fixture
def completed_run():
    """A finished run with three records, one of them failing."""
    from tests.factories import ExperimentRunFactory, ResultRecordFactory

    run = ExperimentRunFactory(kind="vmc", status="completed", checks_passed=False)
    ResultRecordFactory(run=run, index=0, term="K", passed=True)
    ResultRecordFactory(run=run, index=1, term="Sdiag", passed=False)
    ResultRecordFactory(run=run, index=2, term="total", passed=None)
    return run
