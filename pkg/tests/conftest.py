"""
Shared fixtures for the cuspforge test suite.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from cuspforge.core import catalog  # noqa: E402
from cuspforge.core.quad import FieldTag, QuadInt  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None)
settings.register_profile("quick", max_examples=25, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def eisenstein():
    return FieldTag(3)


@pytest.fixture(scope="session")
def gaussian():
    return FieldTag(1)


@pytest.fixture
def q3():
    """QuadInt factory over d=3."""
    tag = FieldTag(3)
    return lambda x, y=0: QuadInt(tag, x, y)


@pytest.fixture
def q1():
    """QuadInt factory over d=1."""
    tag = FieldTag(1)
    return lambda x, y=0: QuadInt(tag, x, y)


@pytest.fixture(scope="session")
def hirzebruch():
    return catalog.hirzebruch()


@pytest.fixture(scope="session")
def d14():
    return catalog.d14()


@pytest.fixture(scope="session")
def holzapfel():
    return catalog.holzapfel()
