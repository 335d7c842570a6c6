import numpy as np
import pytest

from relqubit import (
    EPS,
    NU_MINUS,
    NU_PLUS,
    InvalidMatrix,
    InvalidSL2C,
    InvalidSpinor,
    MassShellMomentum,
    OffShellMomentum,
    SuperluminalBoost,
    apply_lorentz,
    boost_z,
    eps_contract,
    flagpole,
    matrix_to_vector,
    minkowski_dot,
    momentum_from_spatial,
    null_rotation,
    rotation_z,
    sl2c_to_lorentz,
    vector_to_matrix,
)
from relqubit.sampling import random_sl2c, random_spinor

RNG = np.random.default_rng(2024)
INV_SQRT2 = 1.0 / np.sqrt(2.0)


def test_eps_contract_basis_pair():
    # +1 in our convention; the sign is what makes omega_A pi^A = 1 hold
    # for the frames built in test_frames
    assert eps_contract([1, 0], [0, 1]) == 1.0


def test_eps_contract_self_is_zero():
    kappa = np.array([0.3 + 0.1j, 2.0])
    assert eps_contract(kappa, kappa) == 0.0


def test_eps_contract_antisymmetry():
    for _ in range(50):
        kappa, mu = random_spinor(RNG), random_spinor(RNG)
        assert eps_contract(kappa, mu) == pytest.approx(-eps_contract(mu, kappa))


def test_flagpole_pole_directions():
    # the +- assignment pinned by the invariant directions (1,0,0,+-1)
    f_minus = flagpole(NU_MINUS)
    f_plus = flagpole(NU_PLUS)
    np.testing.assert_allclose(f_minus, [INV_SQRT2, 0, 0, -INV_SQRT2], atol=1e-15)
    np.testing.assert_allclose(f_plus, [INV_SQRT2, 0, 0, INV_SQRT2], atol=1e-15)


def test_flagpole_diagonal_spinor():
    # frozen from evaluating nu nu^dagger = [[.5,.5],[.5,.5]] by hand under
    # the documented soldering: zero y and z, spatial part along -x
    nu = np.array([INV_SQRT2, INV_SQRT2])
    np.testing.assert_allclose(
        flagpole(nu), [INV_SQRT2, -INV_SQRT2, 0.0, 0.0], atol=1e-15
    )


def test_flagpole_scaling():
    nu = random_spinor(RNG)
    lam = 0.7 - 1.3j
    np.testing.assert_allclose(
        flagpole(lam * nu), abs(lam) ** 2 * flagpole(nu), rtol=1e-12
    )


def test_flagpole_null_and_future():
    for _ in range(100):
        f = flagpole(random_spinor(RNG))
        assert f[0] > 0.0
        assert abs(minkowski_dot(f, f)) < 1e-12 * f[0] ** 2


def test_flagpole_zero_spinor_raises():
    with pytest.raises(InvalidSpinor):
        flagpole([0.0, 0.0])


def test_vector_to_matrix_time_axis():
    M = vector_to_matrix([1.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(M, np.eye(2) / np.sqrt(2.0), atol=1e-15)


def test_soldering_roundtrip():
    for _ in range(100):
        v = RNG.normal(size=4)
        np.testing.assert_allclose(matrix_to_vector(vector_to_matrix(v)), v, atol=1e-14)


def test_null_vector_zero_determinant():
    v = np.array([2.0, 1.2, -0.4, np.sqrt(4.0 - 1.44 - 0.16)])
    assert abs(minkowski_dot(v, v)) < 1e-12
    assert abs(np.linalg.det(vector_to_matrix(v))) < 1e-14


def test_matrix_to_vector_rejects_non_hermitian():
    with pytest.raises(InvalidMatrix):
        matrix_to_vector(np.array([[1.0, 1.0j], [1.0j, 1.0]]))


def test_soldering_flagpole_consistency():
    # vector_to_matrix(flagpole(nu)) equals nu nu^dagger with constant 1
    for _ in range(50):
        nu = random_spinor(RNG)
        np.testing.assert_allclose(
            vector_to_matrix(flagpole(nu)), np.outer(nu, nu.conj()), atol=1e-13 * np.abs(nu).max() ** 2
        )


def test_sl2c_to_lorentz_identity():
    np.testing.assert_allclose(sl2c_to_lorentz(np.eye(2)), np.eye(4), atol=1e-15)


def test_sl2c_to_lorentz_boost_entries():
    # beta = 0.6: gamma = 1.25, gamma beta = 0.75, (t,z) block only
    M = sl2c_to_lorentz(boost_z(0.6))
    assert M[0, 0] == pytest.approx(1.25, abs=1e-12)
    assert abs(M[0, 3]) == pytest.approx(0.75, abs=1e-12)
    assert abs(M[3, 0]) == pytest.approx(0.75, abs=1e-12)
    assert M[3, 3] == pytest.approx(1.25, abs=1e-12)
    np.testing.assert_allclose(M[1:3, 1:3], np.eye(2), atol=1e-14)
    assert np.abs(M[0:1, 1:3]).max() < 1e-14
    assert np.abs(M[1:3, 0:1]).max() < 1e-14


def test_lorentz_isometry():
    for _ in range(100):
        L = random_sl2c(RNG)
        v, w = RNG.normal(size=4), RNG.normal(size=4)
        scale = max(1.0, abs(minkowski_dot(v, v)), abs(minkowski_dot(w, w)))
        got = minkowski_dot(apply_lorentz(L, v), apply_lorentz(L, w))
        assert abs(got - minkowski_dot(v, w)) < 1e-12 * scale * 100


def test_sl2c_to_lorentz_homomorphism():
    for _ in range(50):
        L1, L2 = random_sl2c(RNG), random_sl2c(RNG)
        lhs = sl2c_to_lorentz(L1 @ L2)
        rhs = sl2c_to_lorentz(L1) @ sl2c_to_lorentz(L2)
        assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, np.abs(rhs).max())


def test_spinor_action_compatibility():
    # vector_to_matrix(L v) = L vector_to_matrix(v) L^dagger
    for _ in range(50):
        L = random_sl2c(RNG)
        v = RNG.normal(size=4)
        lhs = vector_to_matrix(apply_lorentz(L, v))
        rhs = L @ vector_to_matrix(v) @ L.conj().T
        assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, np.abs(rhs).max())


def test_boost_z_w_equals_two():
    # beta = 0.6 gives w = 2, so the matrix is diag(sqrt2, 1/sqrt2)
    np.testing.assert_allclose(
        boost_z(0.6), np.diag([np.sqrt(2.0), 1.0 / np.sqrt(2.0)]), atol=1e-15
    )


def test_null_rotation_matrix():
    alpha = 0.3 - 1.1j
    np.testing.assert_array_equal(null_rotation(alpha), [[1.0, alpha], [0.0, 1.0]])


def test_rotation_z_inverse():
    theta = 0.77
    np.testing.assert_allclose(
        rotation_z(theta) @ rotation_z(-theta), np.eye(2), atol=1e-15
    )


def test_boost_zero_is_identity():
    np.testing.assert_allclose(boost_z(0.0), np.eye(2), atol=1e-15)
    np.testing.assert_array_equal(null_rotation(0.0), np.eye(2))


def test_superluminal_boost_raises():
    with pytest.raises(SuperluminalBoost):
        boost_z(1.0)


def test_sl2c_determinant_enforced():
    with pytest.raises(InvalidSL2C):
        sl2c_to_lorentz(np.array([[2.0, 0.0], [0.0, 1.0]]))


def test_mass_shell_invariants():
    with pytest.raises(OffShellMomentum):
        MassShellMomentum(np.array([1.0, 0.0, 0.0, 0.9]), 1.0)
    with pytest.raises(OffShellMomentum):
        MassShellMomentum(np.array([-1.0, 0.0, 0.0, 0.0]), 1.0)
    p = momentum_from_spatial([0.1, 0.2, 0.3], 2.0)
    assert abs(minkowski_dot(p.vector, p.vector) - 4.0) < 1e-12


def test_eps_matrix_raises_lowers_consistently():
    kappa = random_spinor(RNG)
    raised = EPS @ kappa
    # k^0 = k_1, k^1 = -k_0
    assert raised[0] == kappa[1] and raised[1] == -kappa[0]
