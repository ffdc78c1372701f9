import numpy as np
import pytest

from fracblocks import SpectralOperator

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, title, passed, detail)``."""

    def record(number, title, passed, detail=""):
        _CRITERIA.append((number, title, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} [{number}] {title} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} [{number:>2}] {title}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def dirichlet_ops():
    """Dirichlet spectra j^2 on (0, π) with J modes."""
    return lambda J: SpectralOperator(tuple(float(j * j) for j in range(1, J + 1)), "dirichlet")
