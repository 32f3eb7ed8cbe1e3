"""Uncertainty and measurement-disturbance inequalities on correlation functions.

Every check returns a report with ``margin = bound - lhs``; a negative
margin is a violation. Heisenberg-kind violations are expected physics,
not bugs: the Heisenberg-type error-disturbance product is not a valid
relation, and the point of the correlation bounds is to expose that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mdr import MdrSample, Scenario
from .qcore import Ket, as_unit_vec3, as_vec3, correlation, pauli_op

HEISENBERG = "heisenberg"
OZAWA = "ozawa"
THEOREM1 = "theorem1"
RS = "rs"

KAPPA = {HEISENBERG: 1.0, OZAWA: (math.sqrt(2.0) - 1.0) ** 2}

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    bound: float
    kind: str
    params: dict = field(default_factory=dict)
    margin: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "margin", self.bound - self.lhs)


@dataclass(frozen=True)
class ChshReport:
    B12: float
    B23: float
    total: float
    bound_h: float
    bound_o: float


def _check_kind(kind: str, allowed=(HEISENBERG, OZAWA)) -> str:
    if kind not in allowed:
        raise ValueError(f"kind must be one of {allowed}, got {kind!r}")
    return kind


def _mean(psi: np.ndarray, M: np.ndarray) -> complex:
    return complex(np.vdot(psi, M @ psi))


def rs_check(psi: Ket, a, b) -> BoundReport:
    """Robertson-Schroedinger relation on one qubit.

    ``lhs`` is the covariance-plus-commutator side, ``bound`` the product
    of variances.
    """
    if psi.n_qubits != 1:
        raise ValueError("rs_check takes a single-qubit state")
    v = psi.amplitudes
    A, B = pauli_op(a).matrix, pauli_op(b).matrix
    mA, mB = _mean(v, A).real, _mean(v, B).real
    var_a = _mean(v, A @ A).real - mA**2
    var_b = _mean(v, B @ B).real - mB**2
    anti = _mean(v, A @ B + B @ A).real
    comm = _mean(v, A @ B - B @ A)
    lhs = (0.5 * anti - mA * mB) ** 2 + 0.25 * abs(comm) ** 2
    return BoundReport(lhs=lhs, bound=var_a * var_b, kind=RS)


def gram_area_sq(a, b) -> float:
    """Squared area ``|a|^2 |b|^2 - (a.b)^2`` of the parallelogram on ``a``, ``b``."""
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    return float(a @ a * (b @ b) - (a @ b) ** 2)


def theorem1_check(psi12: Ket, a, b, n_p) -> BoundReport:
    """Correlation form of the Robertson-Schroedinger relation on a two-qubit state:
    ``|E(A1,P2) b - E(B1,P2) a|^2 + E(C1,P2)^2 <= |a x b|^2``."""
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    n_p = as_unit_vec3(n_p, "n_p")
    P = pauli_op(n_p)
    e_a = correlation(psi12, pauli_op(a), 1, P, 2)
    e_b = correlation(psi12, pauli_op(b), 1, P, 2)
    e_c = correlation(psi12, pauli_op(np.cross(a, b)), 1, P, 2)
    w = e_a * b - e_b * a
    return BoundReport(lhs=float(w @ w + e_c**2), bound=gram_area_sq(a, b), kind=THEOREM1)


def theorem2_bound(a, b, n_p, kind: str) -> float:
    """``|a|^2 + |b|^2 - kappa |n_p . (a x b)|`` with kappa 1 or (sqrt2 - 1)^2."""
    _check_kind(kind)
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    n_p = as_unit_vec3(n_p, "n_p")
    return float(a @ a + b @ b - KAPPA[kind] * abs(n_p @ np.cross(a, b)))


def theorem2_check(sample: MdrSample, s: Scenario, kind: str) -> BoundReport:
    """Compare the signed correlation sum of a scenario against its MDR-implied ceiling.

    The sum carries ``(-1)^m`` so that ``bound - lhs`` equals the averaged
    squared error/disturbance minus ``kappa |n_p . c|`` for both Bell pairs.
    """
    _check_kind(kind)
    if sample.scenario_key != s.key():
        raise ValueError("sample was not produced from this scenario")
    lhs = (-1) ** s.m * (sample.E_A2A3 + sample.E_B1B2)
    return BoundReport(lhs=lhs, bound=theorem2_bound(s.a, s.b, s.n_p, kind), kind=kind)


def mdr_lhs(eps: float, eta: float, dA: float, dB: float, kind: str) -> float:
    _check_kind(kind)
    if min(eps, eta, dA, dB) < 0:
        raise ValueError("error, disturbance and deviations must be non-negative")
    if kind == HEISENBERG:
        return eps * eta
    return eps * eta + eps * dB + eta * dA


def golden_section(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 500):
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceError(f"bracket [{a}, {b}] wider than {tol} after {max_iter} steps")
    return (c, fc) if fc < fd else (d, fd)


def vertex_point(dA: float, dB: float, c: float, kind: str) -> tuple[float, float, float]:
    """Point ``(eps, eta, eps^2 + eta^2)`` of the MDR boundary nearest the origin.

    The boundary ``mdr_lhs(eps, eta) = c`` is linear in ``eta`` for fixed
    ``eps``, so ``eta(eps)`` is closed form and the search is one
    dimensional over ``eps``.
    """
    _check_kind(kind)
    if min(dA, dB, c) < 0:
        raise ValueError("dA, dB and c must be non-negative")
    if c == 0:
        return 0.0, 0.0, 0.0
    if kind == HEISENBERG:
        dA = dB = 0.0

    def eta_of(eps: float) -> float:
        denom = eps + dA
        if denom == 0:
            return math.inf
        return max(c - eps * dB, 0.0) / denom

    def radius(eps: float) -> float:
        eta = eta_of(eps)
        return eps * eps + eta * eta

    # eps = eta = sqrt(c) is always feasible, so the minimizer has eps^2 <= 2c;
    # past the eta = 0 intercept c/dB the radius only grows
    hi = math.sqrt(2.0 * c)
    if dB > 0:
        hi = min(hi, c / dB)
    eps, r = golden_section(radius, 0.0, hi)
    # minimum can sit on an axis intercept
    for end in (0.0, hi):
        r_end = radius(end)
        if r_end < r:
            eps, r = end, r_end
    if not math.isfinite(r):
        raise ConvergenceError(f"no finite boundary point for dA={dA}, dB={dB}, c={c}")
    return eps, eta_of(eps), r


def vertex_min_radius(dA: float, dB: float, c: float, kind: str) -> float:
    """Minimum of ``eps^2 + eta^2`` over the region allowed by the chosen MDR."""
    return vertex_point(dA, dB, c, kind)[2]


def _check_orthonormal(a, b) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    if abs(np.linalg.norm(a) - 1) > 1e-10 or abs(np.linalg.norm(b) - 1) > 1e-10 or abs(a @ b) > 1e-10:
        raise ValueError("CHSH composite needs orthonormal a, b")
    return a, b


def _chsh_pair(psi: Ket, i: int, j: int, A, B, Ap, Bp) -> float:
    return (correlation(psi, A, i, Ap, j) - correlation(psi, A, i, Bp, j)
            + correlation(psi, B, i, Ap, j) + correlation(psi, B, i, Bp, j))


def chsh_composite(psi123: Ket, a, b, n_p=None) -> ChshReport:
    """Sum of the CHSH expressions between parties (1,2) and (2,3).

    Primed axes are unit-normalized, ``(a+b)/sqrt2`` and ``(b-a)/sqrt2``.
    Bounds are ``2 sqrt2 K`` evaluated at ``n_p`` (default: along
    ``a x b``, the tightest choice).
    """
    a, b = _check_orthonormal(a, b)
    c = np.cross(a, b)
    n_p = c if n_p is None else as_unit_vec3(n_p, "n_p")
    A, B = pauli_op(a), pauli_op(b)
    Ap, Bp = pauli_op((a + b) / math.sqrt(2)), pauli_op((b - a) / math.sqrt(2))
    b12 = _chsh_pair(psi123, 1, 2, A, B, Ap, Bp)
    b23 = _chsh_pair(psi123, 2, 3, A, B, Ap, Bp)
    scale = 2 * math.sqrt(2)
    return ChshReport(
        B12=b12, B23=b23, total=b12 + b23,
        bound_h=scale * theorem2_bound(a, b, n_p, HEISENBERG),
        bound_o=scale * theorem2_bound(a, b, n_p, OZAWA),
    )


def half_vector_sum(psi123: Ket, a, b) -> float:
    """Eight-correlator sum with the half-length primes ``(a+b)/2``, ``(b-a)/2``.

    Equals ``E(A2,A3) + E(B2,B3) + E(A1,A2) + E(B1,B2)`` by linearity.
    """
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    A, B = pauli_op(a), pauli_op(b)
    Ap, Bp = pauli_op((a + b) / 2), pauli_op((b - a) / 2)
    return _chsh_pair(psi123, 2, 3, A, B, Ap, Bp) + _chsh_pair(psi123, 1, 2, A, B, Ap, Bp)


def heisenberg_composite(psi12: Ket, sample: MdrSample, a, b, n_p) -> float:
    """``E(A2,A3) + E(B1,B2) + |E12(C1,P2)|`` with the last term on the pre-interaction pair.

    Only a reported quantity; its ceiling ``|a|^2 + |b|^2`` rests on the
    Heisenberg-type relation.
    """
    a, b = as_vec3(a, "a"), as_vec3(b, "b")
    e_cp = correlation(psi12, pauli_op(np.cross(a, b)), 1, pauli_op(as_unit_vec3(n_p)), 2)
    return sample.E_A2A3 + sample.E_B1B2 + abs(e_cp)
