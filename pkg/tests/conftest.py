import numpy as np
import pytest

from ppt_moments.pauli import OrthonormalTriad

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def standard():
    return OrthonormalTriad.standard()


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {title}")


# correlation diagonals of the four Bell states
BELL_T = np.array([[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float)


def random_disordered_state(rng):
    """Two-qubit state with vanishing Bloch vectors: a Bell mixture under random local rotations."""
    from ppt_moments.pauli import random_triad
    from ppt_moments.states import TwoQubitData, two_qubit_from_data

    weights = rng.dirichlet(np.full(4, 0.5))
    t = np.diag(weights @ BELL_T)
    r1, r2 = random_triad(rng).as_rows(), random_triad(rng).as_rows()
    return two_qubit_from_data(TwoQubitData(np.zeros(3), np.zeros(3), r1 @ t @ r2.T))
