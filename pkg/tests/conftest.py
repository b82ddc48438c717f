from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import helpers  # noqa: E402

SAMPLES = Path(__file__).parent.parent / "samples"


@pytest.fixture
def alc():
    return helpers.alc()


@pytest.fixture
def ac():
    return helpers.ac()


@pytest.fixture
def aloop():
    return helpers.aloop()


@pytest.fixture
def union_sys():
    return helpers.union_ars()


@pytest.fixture
def eventual():
    return helpers.eventual_ars()


@pytest.fixture(scope="session")
def samples_dir() -> Path:
    return SAMPLES
