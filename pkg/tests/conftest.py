import random
from pathlib import Path

import pytest
from hypothesis import settings

SPECS = Path(__file__).resolve().parent.parent / "specs"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def specs_dir() -> Path:
    return SPECS


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240531)
