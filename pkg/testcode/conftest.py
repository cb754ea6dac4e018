import sys
from pathlib import Path

import pytest

# Load solver modules the same way main.py does
BASE_DIR = Path(__file__).resolve().parent.parent
MODULE_DIR = BASE_DIR / "source"
if str(MODULE_DIR) not in sys.path:
    sys.path.insert(0, str(MODULE_DIR))

import model


@pytest.fixture
def equal_mix():
    return model.PotentialMix(lam=0.2, s=0.5)


@pytest.fixture
def pure_scalar():
    return model.PotentialMix(lam=0.2, s=1.0)


@pytest.fixture
def pure_vector():
    return model.PotentialMix(lam=0.2, s=0.0)
