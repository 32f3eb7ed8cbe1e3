import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from mdrlab.bounds import HEISENBERG, OZAWA, rs_check, theorem1_check, vertex_min_radius
from mdrlab.mdr import disturbance_eta, evaluate_scenario, haar_unitary, precision_epsilon, random_scenario
from mdrlab.qcore import Ket, commutator, correlation, embed, expectation, pauli_op, spin_eigenbasis

coord = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(coord, coord, coord).map(np.array)
unit3 = vec3.filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))
phase = st.floats(0, 2 * math.pi)
seeds = st.integers(0, 2**32 - 1)


def kets(n):
    comps = st.lists(coord, min_size=2 * 2**n, max_size=2 * 2**n)
    return comps.map(lambda c: np.array(c[::2]) + 1j * np.array(c[1::2])).filter(
        lambda v: np.linalg.norm(v) > 1e-3).map(Ket.from_unnormalized)


@given(vec3, vec3)
def test_commutator_is_twice_i_cross(a, b):
    lhs = commutator(pauli_op(a), pauli_op(b)).matrix
    np.testing.assert_allclose(lhs, 2j * pauli_op(np.cross(a, b)).matrix, atol=1e-12)


@given(unit3)
def test_projectors_complete_and_resolve_p(n):
    plus, minus = (k.amplitudes for k in spin_eigenbasis(n))
    Pp, Pm = np.outer(plus, plus.conj()), np.outer(minus, minus.conj())
    np.testing.assert_allclose(Pp + Pm, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(Pp - Pm, pauli_op(n).matrix, atol=1e-12)


@given(vec3)
def test_pauli_square_is_norm_squared(a):
    P = pauli_op(a).matrix
    np.testing.assert_allclose(P @ P, (a @ a) * np.eye(2), atol=1e-12)


@given(kets(3), vec3, vec3, phase)
def test_global_phase_invariance(psi, a, b, phi):
    rotated = Ket(np.exp(1j * phi) * psi.amplitudes)
    A, B = pauli_op(a), pauli_op(b)
    assert math.isclose(correlation(psi, A, 1, B, 3), correlation(rotated, A, 1, B, 3), abs_tol=1e-12)
    A3 = embed(A, [2], 3)
    assert math.isclose(expectation(psi, A3), expectation(rotated, A3), abs_tol=1e-12)


@given(vec3, vec3, st.sampled_from([(1, 2), (1, 3), (2, 3), (3, 1)]))
def test_embedded_ops_on_distinct_sites_commute(a, b, sites):
    i, j = sites
    X, Y = embed(pauli_op(a), [i], 3).matrix, embed(pauli_op(b), [j], 3).matrix
    np.testing.assert_allclose(X @ Y, Y @ X, atol=1e-12)


@given(kets(1), kets(1), seeds, vec3, phase)
def test_error_and_disturbance_phase_invariant(psi1, meter, seed, a, phi):
    U = haar_unitary(np.random.default_rng(seed))
    A = pauli_op(a)
    r1, r2 = Ket(np.exp(1j * phi) * psi1.amplitudes), Ket(np.exp(-2j * phi) * meter.amplitudes)
    assert math.isclose(precision_epsilon(psi1, meter, U, A), precision_epsilon(r1, r2, U, A), abs_tol=1e-10)
    assert math.isclose(disturbance_eta(psi1, meter, U, A), disturbance_eta(r1, r2, U, A), abs_tol=1e-10)


@settings(max_examples=200)
@given(seeds)
def test_correlation_identity_for_any_interaction(seed):
    s = random_scenario(np.random.default_rng(seed))
    assert evaluate_scenario(s).residual_eq15 < 1e-9


@settings(max_examples=300)
@given(kets(2), vec3, vec3, unit3)
def test_theorem1_never_violated(psi, a, b, n):
    assert theorem1_check(psi, a, b, n).margin >= -1e-9


@settings(max_examples=300)
@given(kets(1), vec3, vec3)
def test_robertson_schroedinger_never_violated(psi, a, b):
    assert rs_check(psi, a, b).margin >= -1e-10


@given(st.floats(0, 3), st.floats(0, 3), st.floats(1e-3, 3))
def test_vertex_point_is_on_the_boundary_and_below_axes(dA, dB, c):
    r_o = vertex_min_radius(dA, dB, c, OZAWA)
    # the Ozawa region contains the Heisenberg one, so its vertex is no farther out
    assert r_o <= vertex_min_radius(dA, dB, c, HEISENBERG) + 1e-9
    if dB > 0:
        assert r_o <= (c / dB) * (c / dB) + 1e-9
    if dA > 0:
        assert r_o <= (c / dA) * (c / dA) + 1e-9
