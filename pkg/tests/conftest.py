import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from steiner_ramsey import fixtures


@pytest.fixture
def h5():
    return fixtures.h5()


@pytest.fixture
def g3():
    return fixtures.g3()


@pytest.fixture
def g4():
    return fixtures.g4()


@pytest.fixture
def fano():
    return fixtures.fano()


@pytest.fixture
def p3():
    return fixtures.p3()


@pytest.fixture
def catalog():
    return fixtures.catalog()
