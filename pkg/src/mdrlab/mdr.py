"""Measurement interaction, Ozawa error/disturbance and the correlation identity.

A scenario prepares signal qubit 1 by projecting qubit 2 of a Bell pair,
couples it to a meter qubit 3 through ``U13`` and reads the meter as a
measurement of ``A``. Ozawa's root-mean-square error of ``A`` and
disturbance of ``B`` then satisfy an exact identity with two correlation
functions of the post-interaction three-qubit state, for any ``U13``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .prep import BellPairSpec, bell_state, project_prepare
from .qcore import (
    IDENTITY2,
    Ket,
    Op,
    as_unit_vec3,
    as_vec3,
    correlation,
    embed,
    pauli_op,
    tensor,
)

DEGENERACY_TOL = 1e-10


class DegenerateAxesError(ValueError):
    """The two observable axes are parallel, so they commute and span no plane."""


def complex_pairs(arr: np.ndarray) -> list:
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [complex_pairs(row) for row in arr]


def from_pairs(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass(frozen=True, eq=False)
class Scenario:
    """One measurement experiment: Bell pair ``m``, observables ``a``/``b``,
    preparation axis ``n_p``, meter state and interaction ``U13`` on qubits (1, 3)."""

    m: int
    a: np.ndarray
    b: np.ndarray
    n_p: np.ndarray
    meter: Ket
    U13: Op

    def __post_init__(self):
        if self.m not in (0, 1):
            raise ValueError(f"m must be 0 or 1, got {self.m!r}")
        a, b = as_vec3(self.a, "a"), as_vec3(self.b, "b")
        if np.linalg.norm(np.cross(a, b)) <= DEGENERACY_TOL:
            raise DegenerateAxesError(f"a={a} and b={b} are parallel")
        if self.meter.n_qubits != 1:
            raise ValueError("meter must be a single-qubit state")
        U = self.U13 if isinstance(self.U13, Op) else Op(np.asarray(self.U13))
        if U.dim != 4:
            raise ValueError("U13 must act on two qubits")
        if not U.is_unitary:
            U = Op(U.matrix, is_unitary=True)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n_p", as_unit_vec3(self.n_p, "n_p"))
        object.__setattr__(self, "U13", U)

    @property
    def c(self) -> np.ndarray:
        return np.cross(self.a, self.b)

    @property
    def c_hat(self) -> np.ndarray:
        c = self.c
        return c / np.linalg.norm(c)

    def to_dict(self) -> dict:
        return {
            "m": int(self.m),
            "a": [float(x) for x in self.a],
            "b": [float(x) for x in self.b],
            "n_p": [float(x) for x in self.n_p],
            "meter": complex_pairs(self.meter.amplitudes),
            "U13": complex_pairs(self.U13.matrix),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        return cls(
            m=int(d["m"]),
            a=np.array(d["a"], dtype=float),
            b=np.array(d["b"], dtype=float),
            n_p=np.array(d["n_p"], dtype=float),
            meter=Ket(from_pairs(d["meter"])),
            U13=Op(from_pairs(d["U13"]), is_unitary=True),
        )

    def key(self) -> bytes:
        parts = [np.array([self.m], dtype=float), self.a, self.b, self.n_p,
                 self.meter.amplitudes, self.U13.matrix]
        return b"".join(np.ascontiguousarray(p).tobytes() for p in parts)


@dataclass(frozen=True)
class MdrSample:
    eps_plus: float
    eps_minus: float
    eta_plus: float
    eta_minus: float
    dA_plus: float
    dA_minus: float
    dB_plus: float
    dB_minus: float
    commutator_mean_plus: float
    commutator_mean_minus: float
    E_A2A3: float
    E_B1B2: float
    residual_eq15: float
    prob_plus: float
    prob_minus: float
    # (eps+^2, eps-^2, eta+^2, eta-^2) before the square root
    quadratic_forms: tuple
    scenario_key: bytes


def cnot_u13() -> Op:
    """CNOT with the signal (first factor) as control and the meter as target."""
    return Op(np.eye(4)[[0, 1, 3, 2]], is_unitary=True)


def meter_state(theta3: float) -> Ket:
    """Real meter family ``cos(theta3)|+> + sin(theta3)|->``."""
    return Ket(np.array([np.cos(theta3), np.sin(theta3)]))


def haar_unitary(rng: np.random.Generator, dim: int = 4) -> Op:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal phases removed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return Op(q * (d / np.abs(d)), is_unitary=True)


def cnot_scenario(theta3: float, theta_p: float = 0.0, m: int = 0) -> Scenario:
    """The qubit CNOT model measuring Z and disturbing X.

    ``theta_p`` is the angle between ``n_p`` and ``c = z x x = y``; ``n_p``
    tilts from y towards z.
    """
    return Scenario(
        m=m,
        a=np.array([0.0, 0.0, 1.0]),
        b=np.array([1.0, 0.0, 0.0]),
        n_p=np.array([0.0, np.cos(theta_p), np.sin(theta_p)]),
        meter=meter_state(theta3),
        U13=cnot_u13(),
    )


def random_unit(rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-12:
            return v / n


def random_ket(rng: np.random.Generator, n_qubits: int = 1) -> Ket:
    dim = 2**n_qubits
    return Ket.from_unnormalized(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_axes(rng: np.random.Generator, min_cross: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
    """Two unit axes with ``|a x b| >= min_cross`` (rejection sampled)."""
    while True:
        a, b = random_unit(rng), random_unit(rng)
        if np.linalg.norm(np.cross(a, b)) >= min_cross:
            return a, b


def random_scenario(rng: np.random.Generator) -> Scenario:
    a, b = random_axes(rng)
    return Scenario(
        m=int(rng.integers(2)),
        a=a,
        b=b,
        n_p=random_unit(rng),
        meter=random_ket(rng, 1),
        U13=haar_unitary(rng),
    )


def post_interaction_state(s: Scenario) -> Ket:
    """``U13 (|psi12^(m)> (x) |meter>)`` on qubits ordered (1, 2, 3)."""
    psi12 = bell_state(BellPairSpec(s.m, s.c_hat))
    U = embed(s.U13, [1, 3], 3)
    return Ket.from_unnormalized(U.apply(tensor(psi12, s.meter)))


def _rms_form(psi1: Ket, meter: Ket, D: np.ndarray) -> float:
    v = D @ np.kron(psi1.amplitudes, meter.amplitudes)
    return float(np.vdot(v, v).real)


def _error_operator(U13: Op, A: Op) -> np.ndarray:
    U = U13.matrix
    return U.conj().T @ np.kron(IDENTITY2, A.matrix) @ U - np.kron(A.matrix, IDENTITY2)


def _disturbance_operator(U13: Op, B: Op) -> np.ndarray:
    U = U13.matrix
    BI = np.kron(B.matrix, IDENTITY2)
    return U.conj().T @ BI @ U - BI


def precision_epsilon(psi1: Ket, meter: Ket, U13: Op, A: Op) -> float:
    """Ozawa error of reading ``A`` off the meter after ``U13``."""
    return float(np.sqrt(_rms_form(psi1, meter, _error_operator(U13, A))))


def disturbance_eta(psi1: Ket, meter: Ket, U13: Op, B: Op) -> float:
    """Ozawa disturbance of ``B`` on the signal caused by ``U13``."""
    return float(np.sqrt(_rms_form(psi1, meter, _disturbance_operator(U13, B))))


def std_dev(psi: Ket, X: Op) -> float:
    if not X.is_hermitian:
        raise ValueError("std_dev requires a hermitian operator")
    Xpsi = X.apply(psi)
    mean = float(np.vdot(psi.amplitudes, Xpsi).real)
    var = float(np.vdot(Xpsi, Xpsi).real) - mean**2
    if var < -1e-12:
        raise ArithmeticError(f"negative variance {var!r}")
    return float(np.sqrt(max(var, 0.0)))


def _mean(psi: Ket, X: Op) -> float:
    return float(np.vdot(psi.amplitudes, X.apply(psi)).real)


def evaluate_scenario(s: Scenario) -> MdrSample:
    """Both prepared branches, their Ozawa quantities and the identity residual."""
    A, B, C = pauli_op(s.a), pauli_op(s.b), pauli_op(s.c)
    psi12 = bell_state(BellPairSpec(s.m, s.c_hat))
    D_err = _error_operator(s.U13, A)
    D_dist = _disturbance_operator(s.U13, B)

    branch = {}
    for sign in (1, -1):
        br = project_prepare(psi12, s.n_p, sign)
        branch[sign] = (
            br.prob,
            _rms_form(br.psi1, s.meter, D_err),
            _rms_form(br.psi1, s.meter, D_dist),
            std_dev(br.psi1, A),
            std_dev(br.psi1, B),
            abs(_mean(br.psi1, C)),
        )

    psi123 = post_interaction_state(s)
    E_AA = correlation(psi123, A, 2, A, 3)
    E_BB = correlation(psi123, B, 1, B, 2)

    (p_p, e2p, h2p, dAp, dBp, cp), (p_m, e2m, h2m, dAm, dBm, cm) = branch[1], branch[-1]
    lhs = float(s.a @ s.a + s.b @ s.b) - (-1) ** s.m * (E_AA + E_BB)
    rhs = 0.25 * (e2p + h2p + e2m + h2m)

    return MdrSample(
        eps_plus=float(np.sqrt(e2p)), eps_minus=float(np.sqrt(e2m)),
        eta_plus=float(np.sqrt(h2p)), eta_minus=float(np.sqrt(h2m)),
        dA_plus=dAp, dA_minus=dAm, dB_plus=dBp, dB_minus=dBm,
        commutator_mean_plus=cp, commutator_mean_minus=cm,
        E_A2A3=E_AA, E_B1B2=E_BB,
        residual_eq15=abs(lhs - rhs),
        prob_plus=p_p, prob_minus=p_m,
        quadratic_forms=(e2p, e2m, h2p, h2m),
        scenario_key=s.key(),
    )
