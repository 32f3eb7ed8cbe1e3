"""Dense linear algebra for systems of one to three qubits.

Qubits are numbered from 1. Qubit 1 is the most significant bit of the
amplitude index, so ``|q1 q2 q3>`` lives at index ``4*q1 + 2*q2 + q3`` with
``|+>`` (spin up along z) mapped to bit 0 and ``|->`` to bit 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

TOL_STRUCT = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


class DimensionError(ValueError):
    """Operands act on incompatible Hilbert spaces."""


def as_vec3(v, name: str = "vector") -> np.ndarray:
    """Coerce ``v`` to a finite real array of shape (3,)."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components: {arr}")
    return arr


def as_unit_vec3(v, name: str = "axis") -> np.ndarray:
    arr = as_vec3(v, name)
    if abs(np.linalg.norm(arr) - 1.0) > TOL_STRUCT:
        raise ValueError(f"{name} must be a unit vector, |{name}| = {np.linalg.norm(arr)!r}")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Ket:
    """Normalized pure state of 1, 2 or 3 qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size not in (2, 4, 8):
            raise DimensionError(f"ket length must be 2, 4 or 8, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("ket has non-finite amplitudes")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > TOL_STRUCT:
            raise ValueError(f"ket is not normalized: <psi|psi> = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_unnormalized(cls, amplitudes) -> "Ket":
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if norm == 0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def inner(self, other: "Ket") -> complex:
        """``<self|other>``."""
        if other.dim != self.dim:
            raise DimensionError(f"dims differ: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Op:
    """Square complex matrix on 1-3 qubits.

    The ``is_hermitian`` / ``is_unitary`` flags are claims checked at
    construction; a false claim raises ``ValueError``.
    """

    matrix: np.ndarray
    is_hermitian: bool = False
    is_unitary: bool = False

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] not in (2, 4, 8):
            raise DimensionError(f"operator must be 2x2, 4x4 or 8x8, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("operator has non-finite entries")
        if self.is_hermitian and np.abs(mat - mat.conj().T).max() > TOL_STRUCT:
            raise ValueError("operator declared hermitian is not")
        if self.is_unitary:
            gram = mat.conj().T @ mat
            if np.abs(gram - np.eye(mat.shape[0])).max() > TOL_STRUCT:
                raise ValueError("operator declared unitary is not")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dagger(self) -> "Op":
        return Op(self.matrix.conj().T, self.is_hermitian, self.is_unitary)

    def apply(self, psi: Ket) -> np.ndarray:
        """Raw (possibly unnormalized) image of ``psi``."""
        if psi.dim != self.dim:
            raise DimensionError(f"operator dim {self.dim} vs ket dim {psi.dim}")
        return self.matrix @ psi.amplitudes

    def __matmul__(self, other):
        if isinstance(other, Op):
            if other.dim != self.dim:
                raise DimensionError(f"dims differ: {self.dim} vs {other.dim}")
            return Op(self.matrix @ other.matrix)
        if isinstance(other, Ket):
            return self.apply(other)
        return NotImplemented

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def identity(n_qubits: int) -> Op:
    return Op(np.eye(2**n_qubits), is_hermitian=True, is_unitary=True)


def pauli_op(a) -> Op:
    """Spin observable ``a_x X + a_y Y + a_z Z``; eigenvalues are ``±|a|``."""
    ax, ay, az = as_vec3(a, "a")
    return Op(ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z, is_hermitian=True)


def commutator(A: Op, B: Op) -> Op:
    if A.dim != B.dim:
        raise DimensionError(f"dims differ: {A.dim} vs {B.dim}")
    return Op(A.matrix @ B.matrix - B.matrix @ A.matrix)


def anticommutator(A: Op, B: Op) -> Op:
    if A.dim != B.dim:
        raise DimensionError(f"dims differ: {A.dim} vs {B.dim}")
    return Op(A.matrix @ B.matrix + B.matrix @ A.matrix, is_hermitian=A.is_hermitian and B.is_hermitian)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # first amplitude with non-negligible magnitude made real positive
    idx = int(np.argmax(np.abs(v) > 1e-12))
    return v * (abs(v[idx]) / v[idx])


def spin_eigenbasis(n_p) -> tuple[Ket, Ket]:
    """Eigenvectors ``(|n+>, |n->)`` of ``sigma . n_p`` for a unit axis.

    Written in closed form from the polar angles of ``n_p`` so the result is
    smooth in the axis; each vector has its first nonzero amplitude real
    and positive.
    """
    nx, ny, nz = as_unit_vec3(n_p, "n_p")
    theta = np.arctan2(np.hypot(nx, ny), nz)
    phi = np.arctan2(ny, nx)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    plus = np.array([c, np.exp(1j * phi) * s])
    minus = np.array([s, -np.exp(1j * phi) * c])
    return Ket(_fix_phase(plus)), Ket(_fix_phase(minus))


def tensor(*kets: Ket) -> Ket:
    amps = kets[0].amplitudes
    for k in kets[1:]:
        amps = np.kron(amps, k.amplitudes)
    return Ket(amps)


def embed(op: Op, sites: Sequence[int], n_qubits: int) -> Op:
    """Lift ``op`` to act on the 1-based qubits ``sites`` of an ``n_qubits`` register.

    ``sites`` is ordered: ``sites[0]`` is the most significant qubit of
    ``op``'s own index. Identity acts on every other qubit.
    """
    sites = [int(s) for s in sites]
    if n_qubits not in (1, 2, 3):
        raise DimensionError(f"n_qubits must be 1, 2 or 3, got {n_qubits}")
    if len(set(sites)) != len(sites):
        raise ValueError(f"duplicate sites: {sites}")
    if any(s < 1 or s > n_qubits for s in sites):
        raise ValueError(f"sites {sites} out of range for {n_qubits} qubits")
    k = len(sites)
    if op.dim != 2**k:
        raise DimensionError(f"operator dim {op.dim} does not match {k} site(s)")

    rest = [q for q in range(1, n_qubits + 1) if q not in sites]
    full = np.kron(op.matrix, np.eye(2 ** len(rest)))
    # full currently acts on qubit order sites + rest; permute to 1..n
    order = sites + rest
    perm = [order.index(q) for q in range(1, n_qubits + 1)]
    t = full.reshape([2] * (2 * n_qubits))
    t = t.transpose(perm + [n_qubits + p for p in perm])
    return Op(t.reshape(2**n_qubits, 2**n_qubits), op.is_hermitian, op.is_unitary)


def expectation(psi: Ket, X: Op) -> float:
    """``<psi|X|psi>`` for hermitian ``X``."""
    if not X.is_hermitian:
        raise ValueError("expectation requires an operator flagged hermitian")
    val = np.vdot(psi.amplitudes, X.apply(psi))
    if abs(val.imag) > TOL_STRUCT:
        raise ValueError(f"expectation has imaginary part {val.imag!r}")
    return float(val.real)


def correlation(psi: Ket, X: Op, site_i: int, Y: Op, site_j: int) -> float:
    """Correlation function ``<psi| X_i Y_j |psi>`` of two single-qubit observables."""
    if site_i == site_j:
        raise ValueError("correlation needs two distinct sites")
    if psi.n_qubits < 2:
        raise DimensionError("correlation needs at least two qubits")
    if X.dim != 2 or Y.dim != 2:
        raise DimensionError("correlation takes single-qubit observables")
    n = psi.n_qubits
    if not (1 <= site_i <= n and 1 <= site_j <= n):
        raise ValueError(f"sites ({site_i}, {site_j}) out of range for {n} qubits")
    if not (X.is_hermitian and Y.is_hermitian):
        raise ValueError("correlation requires hermitian observables")
    # bring sites i, j to the front: t[q_i, q_j, rest]
    t = psi.amplitudes.reshape([2] * n)
    if (site_i, site_j) != (1, 2):
        t = np.moveaxis(t, [site_i - 1, site_j - 1], [0, 1])
    t = t.reshape(2, 2, -1)
    image = X.matrix @ (Y.matrix @ t).reshape(2, -1)
    val = np.vdot(t.reshape(2, -1), image)
    if abs(val.imag) > TOL_STRUCT:
        raise ValueError(f"correlation has imaginary part {val.imag!r}")
    return float(val.real)
