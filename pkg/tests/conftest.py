from pathlib import Path

import pytest

from fuzzavail import surface

ROOT = Path(__file__).resolve().parent.parent
MODELS_DIR = ROOT / "models"
DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def reference_grid():
    """101x101 reference surface, shared because it is the expensive bit."""
    return surface(101, 101)


@pytest.fixture(scope="session")
def tablei_path():
    return MODELS_DIR / "tableI.frb"


@pytest.fixture(scope="session")
def events_fixture_path():
    return DATA_DIR / "events_300h.csv"
