"""Shared fixtures: the expensive unipotent baseline is computed once."""

import time

import pytest

from fordcr.certify import run_checklist
from fordcr.facets import compute_side
from fordcr.group import Representation
from fordcr.heisenberg import BoundaryModel


@pytest.fixture(scope="session")
def rep0():
    return Representation(0)


@pytest.fixture(scope="session")
def model0(rep0):
    return BoundaryModel(rep0)


@pytest.fixture(scope="session")
def timings():
    """Wall-clock durations of the expensive session fixtures."""
    return {}


@pytest.fixture(scope="session")
def complexes0(rep0, model0, timings):
    """The four core side complexes at s = 0 (several minutes)."""
    t0 = time.monotonic()
    out = {side: compute_side(rep0, side, model=model0)
           for side in (1, 2, 3, 4)}
    timings["complexes0"] = time.monotonic() - t0
    return out


@pytest.fixture(scope="session")
def checklist0(rep0, complexes0):
    return run_checklist(rep0, complexes=[complexes0[i]
                                          for i in (1, 2, 3, 4)])
