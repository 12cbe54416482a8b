import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from anosov_forge.actions import validate  # noqa: E402
from anosov_forge.config import DEFAULT_CONFIG  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def cartan_generators():
    # companion matrix of x^3 - 3x + 1 (three real roots, units) and a
    # commuting second generator
    a1 = [[0, 0, -1], [1, 0, 3], [0, 1, 0]]
    a2 = [[a1[i][j] - (i == j) for j in range(3)] for i in range(3)]
    return a1, a2


@pytest.fixture(scope="session")
def cartan_action():
    return validate(list(cartan_generators()), name="cartan-t3")


@pytest.fixture(scope="session")
def fibonacci_action():
    return validate([[[1, 1], [1, 0]]], name="fibonacci")


@pytest.fixture(scope="session")
def config():
    return DEFAULT_CONFIG


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)
