from __future__ import annotations

import os
import sys

import pytest

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if BASE_DIR not in sys.path:
    sys.path.append(BASE_DIR)

from cm_engine.core.cache import sublink_cache  # noqa: E402
from cm_engine.corpus import load_code, load_presentation  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_cache():
    sublink_cache.clear()
    yield


@pytest.fixture
def hopf():
    return load_code("hopf")


@pytest.fixture
def borromean():
    return load_code("borromean")


@pytest.fixture
def whitehead():
    return load_code("whitehead")


@pytest.fixture
def theta_circle():
    return load_code("theta_circle")


@pytest.fixture
def split_theta_k4():
    return load_code("split_theta_k4")


@pytest.fixture
def example2():
    return load_presentation("example2")


@pytest.fixture
def example3():
    return load_presentation("example3")
