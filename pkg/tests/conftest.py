import numpy as np
import pytest

# independent reference matrices, written out by hand
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)


def kron(*ms):
    out = np.array([[1.0 + 0j]]) if ms[0].ndim == 2 else np.array([1.0 + 0j])
    for m in ms:
        out = np.kron(out, m)
    return out


def eq19_amplitudes(theta3):
    """Post-CNOT state written term by term, qubit order (1, 2, 3)."""
    c, s = np.cos(theta3), np.sin(theta3)
    psi = np.zeros(8, dtype=complex)
    psi[0b000], psi[0b001] = c, s      # |++>(c|+> + s|->)
    psi[0b111], psi[0b110] = c, s      # |-->(c|-> + s|+>)
    return psi / np.sqrt(2)


def same_up_to_phase(u, v, tol=1e-10):
    return abs(abs(np.vdot(u, v)) - 1.0) < tol


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
