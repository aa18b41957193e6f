import random

import pytest
from fractions import Fraction

from gdofnet.fixtures import homogeneous_example, symmetric_pair, two_user_pair


@pytest.fixture
def n1():
    return symmetric_pair(Fraction(3, 10))


@pytest.fixture
def n2():
    return symmetric_pair(Fraction(1, 2))


@pytest.fixture
def n3():
    return two_user_pair()


@pytest.fixture
def homog3():
    return homogeneous_example()


@pytest.fixture
def rng():
    return random.Random("gdofnet-tests")
