import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from ksec.graph import Graph


@pytest.fixture
def p5():
    return Graph(5, [(i, i + 1) for i in range(1, 5)])


@pytest.fixture
def star4():
    # K_{1,3} with center 1
    return Graph(4, [(1, 2), (1, 3), (1, 4)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def star(n):
    return Graph(n, [(1, v) for v in range(2, n + 1)])
