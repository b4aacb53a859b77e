from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from src.data.games import majority_game

settings.register_profile(
    "games", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("games")

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def majority3():
    return majority_game(3)


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR
