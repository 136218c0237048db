import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest

from tautilt.algebra import parse_algebra

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name):
    return os.path.join(DATA, name)


def read_algebra(name):
    with open(data_path(name), "r", encoding="utf-8") as fh:
        return parse_algebra(fh.read())


@pytest.fixture(scope="session")
def a2():
    return read_algebra("a2.alg")


@pytest.fixture(scope="session")
def a3():
    return read_algebra("a3.alg")


@pytest.fixture(scope="session")
def a4():
    return read_algebra("a4.alg")


@pytest.fixture(scope="session")
def loop2():
    return read_algebra("loop2.alg")


@pytest.fixture(scope="session")
def preproj_a2():
    return read_algebra("preproj_a2.alg")


@pytest.fixture(scope="session")
def kronecker():
    return read_algebra("kronecker.alg")


@pytest.fixture(scope="session")
def point():
    return parse_algebra('field = "Q"\nvertices = ["1"]\n')
