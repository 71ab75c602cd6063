import numpy as np
import pytest

PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def bloch_projector(direction):
    """Rank-1 projector (Id + n.sigma)/2 for a unit 3-vector."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    return 0.5 * (np.eye(2, dtype=complex) + n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2])


def random_unit_vector3(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_state2(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
