import numpy as np
import pytest

from psldpc import ExponentMatrix, MaskSet, latin_circulant

# Base matrix, first mask and compound matrix of the worked 3x4 example.
EX1_BASE = [[0, 0, 0, 0], [0, 1, 3, 4], [0, 2, 6, 5]]
EX1_M0 = [[1, 1, 1, 1], [1, 1, 1, 1], [1, 0, 0, 1]]
_ = -1
EX1_SPLICED = [
    [0, 0, 0, 0, _, _, _, _],
    [0, 1, 3, 4, _, _, _, _],
    [0, _, _, 5, _, 2, 6, _],
    [_, _, _, _, 0, 0, 0, 0],
    [_, _, _, _, 0, 1, 3, 4],
    [_, 2, 6, _, 0, _, _, 5],
]


@pytest.fixture
def ex1_base():
    return ExponentMatrix(EX1_BASE, 7)


@pytest.fixture
def ex1_masks():
    return MaskSet.complement_of(EX1_M0)


@pytest.fixture
def swap2():
    return latin_circulant(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_exponent(rng, m_max=4, n_max=8, p_max=16, density=None):
    m = int(rng.integers(1, m_max + 1))
    n = int(rng.integers(1, n_max + 1))
    P = int(rng.integers(1, p_max + 1))
    dens = rng.uniform(0.3, 1.0) if density is None else density
    ent = np.where(rng.random((m, n)) < dens, rng.integers(0, P, (m, n)), -1)
    return ExponentMatrix(ent, P)


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
