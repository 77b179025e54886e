"""
coxnorm/conftest.py
Shared fixtures. The packages are imported by directory, so the repository
root goes on sys.path.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from coxeter import build_group, parse_spec  # noqa: E402

settings.register_profile("coxnorm", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("coxnorm")


@pytest.fixture(scope="session")
def i2_3():
    return build_group(parse_spec("I2:3"))


@pytest.fixture(scope="session")
def a3():
    return build_group(parse_spec("A3"))


@pytest.fixture(scope="session")
def b3():
    return build_group(parse_spec("B3"))


@pytest.fixture(scope="session")
def d3():
    return build_group(parse_spec("D3"))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
