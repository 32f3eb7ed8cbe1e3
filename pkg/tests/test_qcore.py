import numpy as np
import pytest

from mdrlab.qcore import (
    DimensionError,
    Ket,
    Op,
    commutator,
    correlation,
    embed,
    expectation,
    pauli_op,
    spin_eigenbasis,
)

from conftest import DOWN, I2, UP, X, Y, Z, eq19_amplitudes, kron


@pytest.mark.parametrize("a, expected", [
    ((0, 0, 1), [[1, 0], [0, -1]]),
    ((1, 0, 0), [[0, 1], [1, 0]]),
    ((0, 2, 0), [[0, -2j], [2j, 0]]),
])
def test_pauli_op_examples(a, expected):
    np.testing.assert_array_equal(pauli_op(a).matrix, np.array(expected, dtype=complex))


def test_pauli_op_zero_vector_is_zero_matrix():
    assert not pauli_op((0, 0, 0)).matrix.any()


def test_pauli_op_rejects_nonfinite():
    with pytest.raises(ValueError):
        pauli_op((np.nan, 0, 0))


def test_commutator_pauli_algebra():
    XY = commutator(pauli_op((1, 0, 0)), pauli_op((0, 1, 0)))
    np.testing.assert_allclose(XY.matrix, 2j * Z, atol=1e-15)
    assert not commutator(pauli_op((0, 0, 1)), pauli_op((0, 0, 1))).matrix.any()


def test_commutator_against_hand_multiplication():
    A = X + Y          # a = (1, 1, 0)
    B = Z              # b = (0, 0, 1)
    oracle = A @ B - B @ A
    np.testing.assert_allclose(oracle, 2j * (X - Y), atol=1e-15)
    got = commutator(pauli_op((1, 1, 0)), pauli_op((0, 0, 1))).matrix
    np.testing.assert_allclose(got, oracle, atol=1e-15)
    np.testing.assert_allclose(got, 2j * pauli_op((1, -1, 0)).matrix, atol=1e-15)


def test_commutator_dimension_mismatch():
    with pytest.raises(DimensionError):
        commutator(pauli_op((1, 0, 0)), Op(np.eye(4)))


def test_spin_eigenbasis_z_and_x():
    plus, minus = spin_eigenbasis((0, 0, 1))
    np.testing.assert_allclose(plus.amplitudes, UP)
    np.testing.assert_allclose(minus.amplitudes, DOWN)
    plus, minus = spin_eigenbasis((1, 0, 0))
    np.testing.assert_allclose(plus.amplitudes, (UP + DOWN) / np.sqrt(2))
    np.testing.assert_allclose(minus.amplitudes, (UP - DOWN) / np.sqrt(2))


@pytest.mark.parametrize("theta, phi", [(0.3, 1.1), (2.0, -2.5), (np.pi / 2, np.pi / 3), (3.0, 0.2)])
def test_spin_eigenbasis_polar_form(theta, phi):
    n = (np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
    plus, minus = spin_eigenbasis(n)
    expected = np.cos(theta / 2) * UP + np.exp(1j * phi) * np.sin(theta / 2) * DOWN
    np.testing.assert_allclose(plus.amplitudes, expected, atol=1e-12)
    P = pauli_op(n).matrix
    np.testing.assert_allclose(P @ plus.amplitudes, plus.amplitudes, atol=1e-12)
    np.testing.assert_allclose(P @ minus.amplitudes, -minus.amplitudes, atol=1e-12)


@pytest.mark.parametrize("n", [(0, 0, -1), (0, 1, 0), (0.6, 0, -0.8)])
def test_spin_eigenbasis_phase_convention(n):
    for k in spin_eigenbasis(n):
        first = k.amplitudes[np.argmax(np.abs(k.amplitudes) > 1e-12)]
        assert abs(first.imag) < 1e-15 and first.real > 0


def test_spin_eigenbasis_rejects_non_unit():
    with pytest.raises(ValueError):
        spin_eigenbasis((0, 0, 2))


def test_embed_single_site():
    np.testing.assert_array_equal(embed(pauli_op((0, 0, 1)), [1], 2).matrix, kron(Z, I2))
    np.testing.assert_array_equal(embed(pauli_op((1, 0, 0)), [2], 2).matrix, kron(I2, X))
    np.testing.assert_array_equal(embed(pauli_op((0, 1, 0)), [2], 3).matrix, kron(I2, Y, I2))


def test_embed_cnot_on_outer_qubits():
    cnot = Op(np.eye(4)[[0, 1, 3, 2]], is_unitary=True)
    # oracle: flip bit 3 whenever bit 1 is set
    perm = np.zeros((8, 8))
    for idx in range(8):
        q1, q2, q3 = idx >> 2 & 1, idx >> 1 & 1, idx & 1
        perm[(q1 << 2) | (q2 << 1) | (q3 ^ q1), idx] = 1
    big = embed(cnot, [1, 3], 3).matrix
    np.testing.assert_array_equal(big, perm)
    np.testing.assert_array_equal(big @ kron(DOWN, UP, UP), kron(DOWN, UP, DOWN))


def test_embed_reversed_site_order():
    cnot = Op(np.eye(4)[[0, 1, 3, 2]], is_unitary=True)
    # control on qubit 2, target qubit 1
    big = embed(cnot, [2, 1], 2).matrix
    np.testing.assert_array_equal(big @ kron(UP, DOWN), kron(DOWN, DOWN))
    np.testing.assert_array_equal(big @ kron(DOWN, UP), kron(DOWN, UP))


@pytest.mark.parametrize("sites, n", [([0], 2), ([3], 2), ([1, 1], 3)])
def test_embed_bad_sites(sites, n):
    op = pauli_op((1, 0, 0)) if len(sites) == 1 else Op(np.eye(4))
    with pytest.raises(ValueError):
        embed(op, sites, n)


def test_embed_dim_mismatch():
    with pytest.raises(DimensionError):
        embed(Op(np.eye(4)), [1], 2)


def test_expectation_examples():
    up = Ket(UP)
    assert expectation(up, pauli_op((0, 0, 1))) == pytest.approx(1.0, abs=1e-15)
    assert expectation(up, pauli_op((1, 0, 0))) == pytest.approx(0.0, abs=1e-15)
    assert expectation(Ket((UP + DOWN) / np.sqrt(2)), pauli_op((0, 0, 1))) == pytest.approx(0.0, abs=1e-15)


def test_expectation_rejects_non_hermitian_and_mismatch():
    with pytest.raises(ValueError):
        expectation(Ket(UP), Op(np.array([[0, 1], [0, 0]])))
    with pytest.raises(DimensionError):
        expectation(Ket(UP), Op(np.eye(4), is_hermitian=True))


def test_correlation_examples():
    phi_plus = Ket((kron(UP, UP) + kron(DOWN, DOWN)) / np.sqrt(2))
    z = pauli_op((0, 0, 1))
    assert correlation(phi_plus, z, 1, z, 2) == pytest.approx(1.0, abs=1e-15)

    singlet = Ket((kron(UP, DOWN) - kron(DOWN, UP)) / np.sqrt(2))
    for n in [(1, 0, 0), (0, 1, 0), (0.48, -0.6, 0.64)]:
        P = pauli_op(n)
        assert correlation(singlet, P, 1, P, 2) == pytest.approx(-1.0, abs=1e-12)


def test_correlation_on_cnot_state_against_contraction():
    psi = eq19_amplitudes(np.pi / 8)
    oracle = np.vdot(psi, kron(I2, Z, Z) @ psi).real
    assert oracle == pytest.approx(np.cos(np.pi / 4), abs=1e-14)
    z = pauli_op((0, 0, 1))
    assert correlation(Ket(psi), z, 2, z, 3) == pytest.approx(oracle, abs=1e-14)


def test_correlation_matches_embed_everywhere(rng):
    for _ in range(20):
        psi = Ket.from_unnormalized(rng.standard_normal(8) + 1j * rng.standard_normal(8))
        A, B = pauli_op(rng.standard_normal(3)), pauli_op(rng.standard_normal(3))
        for i, j in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]:
            oracle = np.vdot(psi.amplitudes, embed(A, [i], 3).matrix @ embed(B, [j], 3).matrix @ psi.amplitudes)
            assert correlation(psi, A, i, B, j) == pytest.approx(oracle.real, abs=1e-12)


def test_correlation_same_site_rejected():
    psi = Ket(kron(UP, UP))
    with pytest.raises(ValueError):
        correlation(psi, pauli_op((0, 0, 1)), 1, pauli_op((0, 0, 1)), 1)


def test_ket_validation():
    with pytest.raises(ValueError):
        Ket(np.array([1, 1]))
    with pytest.raises(DimensionError):
        Ket(np.ones(3) / np.sqrt(3))
    assert Ket(kron(UP, UP, UP)).n_qubits == 3


def test_op_flag_validation():
    with pytest.raises(ValueError):
        Op(np.array([[0, 1], [0, 0]]), is_hermitian=True)
    with pytest.raises(ValueError):
        Op(2 * np.eye(2), is_unitary=True)
    Op(X, is_hermitian=True, is_unitary=True)


def test_values_are_immutable():
    k = Ket(UP)
    with pytest.raises(ValueError):
        k.amplitudes[0] = 0
