import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.catalog import boolean, luk, z_rig  # noqa: E402
from src.utils import merge_config  # noqa: E402


@pytest.fixture
def l3():
    return luk(3)


@pytest.fixture
def l4():
    return luk(4)


@pytest.fixture
def two():
    return boolean(1, "inf")


@pytest.fixture
def four():
    return boolean(2, "inf")


@pytest.fixture
def z10():
    return z_rig(10)


@pytest.fixture
def small_config(tmp_path):
    """Defaults shrunk so that every stage runs in well under a second"""
    return merge_config({
        'verification': {'window': 2, 'samples': 200, 'word_budget': 100, 'exhaustive_limit': 2000},
        'coextensivity': {'probes': ['trivial', 'boolean(1,inf)']},
        'outputs': {'reports': str(tmp_path / "reports")},
    })


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-window acceptance runs (deselect with -m 'not slow')")
