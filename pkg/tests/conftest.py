import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def entries():
    from lcsnovikov import catalog
    return {e.label: e for e in catalog.standard_entries()}


@pytest.fixture(scope="session")
def inoue(entries):
    return entries["inoue_solv(1,1)"]


@pytest.fixture(scope="session")
def heis1(entries):
    return entries["heisenberg(1)"]
