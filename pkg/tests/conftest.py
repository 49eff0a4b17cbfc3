import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from stftinv import _backend
from stftinv.fixtures import make_fixture
from stftinv.grid import UniformGrid, default_grid

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

#: Filled by tests/test_acceptance.py, printed at the end of the session.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}")


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def odd_grid():
    return default_grid(odd=True)


@pytest.fixture(scope="session")
def small_grid():
    return UniformGrid(12.0, 257)


@pytest.fixture(scope="session")
def gaussian_f(grid):
    return make_fixture("gaussian", grid)


@pytest.fixture(params=_backend.available())
def backend(request):
    return request.param
