import random

import pytest

from tomodiff import BinaryImage, RowChoicePolicy, canonicalize, random_consistent_profile

from helpers import (
    DEMO_COLS,
    DEMO_F1_TEXT,
    DEMO_F2_TEXT,
    DEMO_F3_TEXT,
    DEMO_ROWS,
)

CORPUS_SEED = 20250809
CORPUS_SIZE = 500


@pytest.fixture(scope="session")
def demo_profile():
    return canonicalize(DEMO_ROWS, DEMO_COLS)


@pytest.fixture(scope="session")
def demo_f1():
    return BinaryImage.from_text(DEMO_F1_TEXT)


@pytest.fixture(scope="session")
def demo_f2():
    return BinaryImage.from_text(DEMO_F2_TEXT)


@pytest.fixture(scope="session")
def demo_f3():
    return BinaryImage.from_text(DEMO_F3_TEXT)


@pytest.fixture(scope="session")
def pinned_policy():
    """Pins every free choice so the demo construction is fully reproducible."""
    return RowChoicePolicy(f2_rows=(7, 1, 2, 3), f3_windows={1: (7, 8), 2: (1, 4)})


@pytest.fixture(scope="session")
def corpus():
    """Seeded random consistent profiles with sides between 2 and 5."""
    rng = random.Random(CORPUS_SEED)
    return [random_consistent_profile(rng) for _ in range(CORPUS_SIZE)]
