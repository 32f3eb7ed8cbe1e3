"""Entangled source pairs and projective preparation of signal qubits."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import (
    TOL_STRUCT,
    Ket,
    as_unit_vec3,
    as_vec3,
    correlation,
    pauli_op,
    spin_eigenbasis,
    tensor,
)

_AXES = np.eye(3)


@dataclass(frozen=True, eq=False)
class BellPairSpec:
    m: int
    c_hat: np.ndarray

    def __post_init__(self):
        if self.m not in (0, 1):
            raise ValueError(f"m must be 0 or 1, got {self.m!r}")
        object.__setattr__(self, "c_hat", as_unit_vec3(self.c_hat, "c_hat"))


@dataclass(frozen=True)
class PreparedBranch:
    sign: int
    prob: float
    psi1: Ket


def bell_state(spec: BellPairSpec) -> Ket:
    """``(|+>_c|->_c + (-1)^m |->_c|+>_c) / sqrt(2)`` in the eigenbasis of ``c_hat``."""
    up, down = spin_eigenbasis(spec.c_hat)
    sign = -1.0 if spec.m else 1.0
    amps = (tensor(up, down).amplitudes + sign * tensor(down, up).amplitudes) / np.sqrt(2)
    return Ket(amps)


def verify_inplane_symmetry(psi: Ket, m: int, v, c_hat=None) -> float:
    """Residual ``||(V x V) psi - (-1)^m psi||`` for ``V = sigma . v``.

    For a unit Pauli ``V`` the inverse is ``V`` itself. When ``c_hat`` is
    supplied, ``v`` must be orthogonal to it.
    """
    v = as_unit_vec3(v, "v")
    if c_hat is not None and abs(float(np.dot(v, as_vec3(c_hat, "c_hat")))) > TOL_STRUCT:
        raise ValueError("v must lie in the plane orthogonal to c_hat")
    if psi.n_qubits != 2:
        raise ValueError("in-plane symmetry is defined for two-qubit states")
    V = pauli_op(v).matrix
    image = np.kron(V, V) @ psi.amplitudes
    return float(np.linalg.norm(image - (-1) ** m * psi.amplitudes))


def _sign_index(sign) -> int:
    if sign in (1, "+"):
        return 0
    if sign in (-1, "-"):
        return 1
    raise ValueError(f"sign must be +1/-1 or '+'/'-', got {sign!r}")


def project_prepare(psi12: Ket, n_p, sign) -> PreparedBranch:
    """Project qubit 2 of ``psi12`` onto ``|n_p^sign>`` and return qubit 1's state."""
    if psi12.n_qubits != 2:
        raise ValueError("project_prepare needs a two-qubit state")
    k = _sign_index(sign)
    proj = spin_eigenbasis(n_p)[k].amplitudes
    partial = psi12.amplitudes.reshape(2, 2) @ proj.conj()
    norm = float(np.linalg.norm(partial))
    if norm <= 1e-12:
        raise ValueError(f"branch {sign!r} has zero probability for n_p={np.asarray(n_p)}")
    return PreparedBranch(sign=1 if k == 0 else -1, prob=norm**2, psi1=Ket(partial / norm))


def schmidt_coefficients(psi12: Ket) -> np.ndarray:
    """Schmidt coefficients in descending order."""
    return np.linalg.svd(psi12.amplitudes.reshape(2, 2), compute_uv=False)


def bloch_vector(psi1: Ket) -> np.ndarray:
    return np.array([float(np.vdot(psi1.amplitudes, pauli_op(e).matrix @ psi1.amplitudes).real)
                     for e in _AXES])


def correlation_tensor(psi12: Ket) -> np.ndarray:
    """``T[i, j] = E(sigma_i, sigma_j)`` over the x, y, z axes."""
    paulis = [pauli_op(e) for e in _AXES]
    return np.array([[correlation(psi12, P, 1, Q, 2) for Q in paulis] for P in paulis])


def preparation_axis(psi12: Ket, target: Ket) -> np.ndarray:
    """Axis ``n_p`` whose ``+`` branch steers qubit 1 of a maximally entangled pair to ``target``.

    Uses the fact that the ``+`` branch of such a pair has Bloch vector
    ``T @ n_p`` with ``T`` orthogonal.
    """
    T = correlation_tensor(psi12)
    if np.abs(T @ T.T - np.eye(3)).max() > 1e-8:
        raise ValueError("psi12 is not maximally entangled")
    n = T.T @ bloch_vector(target)
    return n / np.linalg.norm(n)
