import numpy as np
import pytest

from kmn_ebi import derive_partition

VALID_41 = [(m, n) for m in range(3, 42, 2) for n in range(2, m, 2)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20140601)


@pytest.fixture(params=[(3, 2), (5, 4), (7, 4), (7, 6), (9, 4), (13, 8)], ids=lambda p: f"K{p[0]},{p[1]}")
def params(request):
    return derive_partition(*request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
