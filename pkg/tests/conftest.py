import numpy as np
import pytest


@pytest.fixture
def rng():
    """Fresh generator per test so failures reproduce in isolation."""
    return np.random.default_rng(20260815)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: criterion-level checks with pinned tolerances")
