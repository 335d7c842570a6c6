import numpy as np
import pytest

from relqubit import (
    NU_MINUS,
    NU_PLUS,
    NotNormalized,
    QuantizationAxis,
    QubitWavePacket,
    TopologicalObstruction,
    boost_z,
    boost_z_rapidity,
    degree_of_polarization,
    make_gaussian_packet,
    make_gaussian_photon_packet,
    normalize,
    packet_from_json,
    packet_norm,
    packet_to_json,
    poincare_transform,
    product_form_residual,
    rebase,
    reduced_density_matrix,
    rotation_x,
)

RNG = np.random.default_rng(4242)
PND_AXIS = QuantizationAxis.null_pnd(NU_MINUS)
HEL_AXIS = QuantizationAxis.helicity(NU_MINUS)
Y0 = np.zeros(4)


def z_packet(axis, mass=1.0, spread=0.1, angular=0.2, n=16, seed=5, spin=(1.0, 0.0)):
    return make_gaussian_packet([0, 0, 1.0], spread, angular, n, seed, axis, mass, spin)


def test_gaussian_packet_deterministic():
    a = z_packet(PND_AXIS)
    b = z_packet(PND_AXIS)
    np.testing.assert_array_equal(a.momenta, b.momenta)
    np.testing.assert_array_equal(a.weights, b.weights)
    np.testing.assert_array_equal(a.amps, b.amps)


def test_gaussian_packet_zero_angular_spread_is_one_ray():
    pkt = z_packet(PND_AXIS, angular=0.0, n=5)
    directions = pkt.momenta[:, 1:] / np.linalg.norm(pkt.momenta[:, 1:], axis=1)[:, None]
    np.testing.assert_allclose(directions, np.tile([0, 0, 1.0], (5, 1)), atol=1e-14)


def test_gaussian_packet_delta():
    pkt = z_packet(PND_AXIS, spread=0.0, angular=0.0, n=4)
    np.testing.assert_allclose(pkt.momenta, np.tile(pkt.momenta[0], (4, 1)), atol=1e-15)


def test_packet_normalization():
    pkt = z_packet(PND_AXIS, spin=(1.0, 1.0))
    assert packet_norm(pkt) == pytest.approx(1.0, abs=1e-10)
    doubled = normalize(
        QubitWavePacket(pkt.momenta, pkt.weights, 2.0 * pkt.amps, pkt.axis, pkt.mass)
    )
    assert packet_norm(doubled) == pytest.approx(1.0, abs=1e-12)


def test_identity_transform_is_noop():
    pkt = z_packet(PND_AXIS)
    out = poincare_transform(pkt, Y0, np.eye(2))
    np.testing.assert_array_equal(out.momenta, pkt.momenta)
    np.testing.assert_array_equal(out.amps, pkt.amps)


def test_pnd_boost_leaves_amplitudes_untouched():
    # relativistic corrections reduce to Doppler shifts on the PND axis
    pkt = z_packet(PND_AXIS, spin=(0.6, 0.8j))
    out = poincare_transform(pkt, Y0, boost_z(0.7))
    assert np.abs(out.momenta - pkt.momenta).max() > 0.1  # momenta do shift
    np.testing.assert_allclose(out.amps, pkt.amps, atol=1e-12)


def test_transform_preserves_norm():
    for axis in (PND_AXIS, HEL_AXIS):
        pkt = z_packet(axis, spin=(1.0, 1.0))
        for L in (boost_z(-0.9), boost_z(0.5) @ rotation_x(0.4)):
            y = RNG.normal(size=4)
            out = poincare_transform(pkt, y, L)
            assert abs(packet_norm(out) - packet_norm(pkt)) < 1e-12


def test_translation_phases_cancel_in_density_matrix():
    pkt = z_packet(PND_AXIS, spin=(1.0, 1.0))
    out = poincare_transform(pkt, np.array([1.3, -0.2, 0.9, 11.0]), np.eye(2))
    np.testing.assert_allclose(
        reduced_density_matrix(out), reduced_density_matrix(pkt), atol=1e-12
    )


def test_reduced_density_product_form():
    spin = np.array([0.6, 0.8j])
    pkt = z_packet(PND_AXIS, spin=tuple(spin))
    rho = reduced_density_matrix(pkt)
    np.testing.assert_allclose(rho, np.outer(spin, spin.conj()), atol=1e-12)
    assert degree_of_polarization(rho) == pytest.approx(1.0, abs=1e-12)


def test_reduced_density_equal_mixture():
    pkt = z_packet(PND_AXIS, n=8)
    amps = pkt.amps.copy()
    amps[: 4] = [1.0, 0.0]
    amps[4:] = [0.0, 1.0]
    mixed = QubitWavePacket(pkt.momenta, pkt.weights, amps, pkt.axis, pkt.mass)
    np.testing.assert_allclose(reduced_density_matrix(mixed), np.eye(2) / 2.0, atol=1e-12)
    assert degree_of_polarization(np.eye(2) / 2.0) == pytest.approx(0.0, abs=1e-12)


def test_degree_of_polarization_examples():
    assert degree_of_polarization(np.diag([0.75, 0.25])) == pytest.approx(0.5)


def test_not_normalized_raises():
    pkt = z_packet(PND_AXIS)
    bad = QubitWavePacket(pkt.momenta, pkt.weights, 3.0 * pkt.amps, pkt.axis, pkt.mass)
    with pytest.raises(NotNormalized):
        reduced_density_matrix(bad)


def test_product_form_covariant_on_pnd_axis():
    # arbitrary z-boost sequences keep the packet in product form
    pkt = z_packet(PND_AXIS, spin=(1.0, 1.0), angular=0.4)
    state = pkt
    for beta in (0.3, -0.5, 0.8, 0.2):
        state = poincare_transform(state, Y0, boost_z(beta))
        assert product_form_residual(state) < 1e-12


def test_product_form_covariant_under_shared_pnd_sequence():
    # boosts, z-rotations and null rotations all keep (1,0) as an
    # eigenspinor, so the nu_minus-axis packet stays in product form
    from relqubit import null_rotation, rotation_z

    pkt = z_packet(PND_AXIS, spin=(1.0, -1.0), angular=0.3)
    state = pkt
    for L in (
        boost_z(0.5),
        boost_z(0.2) @ rotation_z(0.8),
        null_rotation(0.4 - 0.7j),
        rotation_z(-1.1),
    ):
        state = poincare_transform(state, Y0, L)
        assert product_form_residual(state) < 1e-12
    assert abs(packet_norm(state) - 1.0) < 1e-12


def test_helicity_packet_depolarizes():
    pkt = z_packet(HEL_AXIS, spin=(1.0, 1.0), angular=0.3)
    assert product_form_residual(pkt) < 1e-12
    out = poincare_transform(pkt, Y0, boost_z(-np.tanh(1.0)))
    assert product_form_residual(out) > 1e-6
    assert degree_of_polarization(reduced_density_matrix(out)) < 1.0 - 1e-6


def test_helicity_polarization_nonincreasing_in_rapidity():
    pkt = z_packet(HEL_AXIS, spin=(1.0, 1.0), angular=0.3, n=32)
    dops = []
    for xi in (0.5, 1.0, 1.5, 2.0):
        out = poincare_transform(pkt, Y0, boost_z_rapidity(-xi))
        dops.append(degree_of_polarization(reduced_density_matrix(out)))
    assert all(dops[i + 1] <= dops[i] + 1e-12 for i in range(len(dops) - 1))
    assert dops[-1] < 1.0


def test_rebase_same_axis_is_identity_up_to_phase():
    pkt = z_packet(PND_AXIS, spin=(1.0, 1.0j))
    out = rebase(pkt, QuantizationAxis.null_pnd(2.0j * NU_MINUS))
    ratios = out.amps / pkt.amps
    np.testing.assert_allclose(ratios, ratios[0, 0], atol=1e-12)
    assert abs(abs(ratios[0, 0]) - 1.0) < 1e-12


def test_rebase_pole_to_pole_rest_frame():
    # at p = (m,0,0,0) the change matrix is [[0,1],[-1,0]]
    p = np.array([[1.0, 0.0, 0.0, 0.0]])
    pkt = QubitWavePacket(p, [1.0], [[0.6, 0.8]], PND_AXIS, 1.0)
    out = rebase(pkt, QuantizationAxis.null_pnd(NU_PLUS))
    np.testing.assert_allclose(out.amps, [[0.8, -0.6]], atol=1e-14)


def test_rebase_roundtrip():
    pkt = z_packet(PND_AXIS, spin=(0.3, 0.9))
    hel = rebase(pkt, HEL_AXIS)
    back = rebase(hel, PND_AXIS)
    ratios = back.amps / pkt.amps
    np.testing.assert_allclose(ratios, ratios[0, 0], atol=1e-10)
    assert abs(packet_norm(back) - packet_norm(pkt)) < 1e-10
    assert np.abs(hel.amps - pkt.amps).max() > 1e-3  # the change is nontrivial


def test_photon_packet_parallel_rays_keep_polarization():
    # Wigner phase independent of |p| on a ray: pure state stays pure
    nu = np.array([1.0, 1.0]) / np.sqrt(2.0)  # generic generator off the ray
    axis = QuantizationAxis.null_pnd(nu)
    pkt = make_gaussian_photon_packet(
        [0, 0, 1.0], 0.4, 0.0, 12, 3, axis, spin=(1.0, 1.0)
    )
    for L in (boost_z(0.9), boost_z(-0.6), boost_z(0.3) @ rotation_x(0.7)):
        out = poincare_transform(pkt, Y0, L)
        rho = reduced_density_matrix(out)
        assert degree_of_polarization(rho) > 1.0 - 1e-9
        assert abs(packet_norm(out) - 1.0) < 1e-12


def test_photon_packet_spread_depolarizes():
    nu = np.array([1.0, 1.0]) / np.sqrt(2.0)
    axis = QuantizationAxis.null_pnd(nu)
    pkt = make_gaussian_photon_packet(
        [0, 0, 1.0], 0.1, 0.4, 32, 3, axis, spin=(1.0, 1.0)
    )
    out = poincare_transform(pkt, Y0, boost_z(-0.9))
    assert degree_of_polarization(reduced_density_matrix(out)) < 1.0 - 1e-6


def test_photon_topological_obstruction():
    # rotation_x(pi/2) sends -y to +z, driving the ray onto flag(nu_plus)
    pkt = make_gaussian_photon_packet(
        [0.0, -1.0, 0.0], 0.0, 0.0, 4, 1, QuantizationAxis.null_pnd(NU_PLUS), spin=(1.0, 1.0)
    )
    with pytest.raises(TopologicalObstruction):
        poincare_transform(pkt, Y0, rotation_x(np.pi / 2.0))


def test_photon_parallel_generator_rejected_at_transform():
    pkt = make_gaussian_photon_packet(
        [0, 0, 1.0], 0.0, 0.0, 2, 1, QuantizationAxis.null_pnd(NU_PLUS), spin=(1.0, 0.0)
    )
    with pytest.raises(TopologicalObstruction):
        poincare_transform(pkt, Y0, boost_z(0.5))


def test_json_roundtrip_exact():
    for pkt in (
        z_packet(PND_AXIS, spin=(0.6, 0.8j)),
        z_packet(HEL_AXIS, spin=(1.0, 1.0)),
        make_gaussian_photon_packet(
            [0, 0, 1.0], 0.3, 0.2, 6, 9, QuantizationAxis.null_pnd([1.0, 1.0]), spin=(1.0, 1.0j)
        ),
    ):
        text = packet_to_json(pkt)
        back = packet_from_json(text)
        assert type(back) is type(pkt)
        np.testing.assert_array_equal(back.momenta, pkt.momenta)
        np.testing.assert_array_equal(back.weights, pkt.weights)
        np.testing.assert_array_equal(back.amps, pkt.amps)
        assert packet_to_json(back) == text


def test_mass_shell_enforced_on_construction():
    with pytest.raises(Exception):
        QubitWavePacket(
            np.array([[1.0, 0.0, 0.0, 0.9]]), [1.0], [[1.0, 0.0]], PND_AXIS, 1.0
        )
