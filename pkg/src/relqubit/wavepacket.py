"""Discretized momentum-space wave packets and their Poincare action.

A packet is a weighted cloud of on-shell momentum samples, each carrying a
two-component amplitude referred to a declared quantization axis.  The
Poincare action is an exact push-forward of the sample points (weights
unchanged), with amplitudes multiplied by e^{i y.p} times the little-group
matrix, so unitarity holds on the discrete packet by construction.  Spin
observables see only the reduced 2x2 density matrix; relative phases
between different momentum samples drop out of it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import MasslessUnsupported, NotNormalized, RelQubitError
from .frames import make_spin_frame
from .littlegroup import wigner_matrix, wigner_matrix_massless
from .observables import (
    AxisKind,
    QuantizationAxis,
    basis_change,
    bb84_change_matrix,
    rays_parallel,
)
from .spinor import (
    NU_MINUS,
    NU_PLUS,
    MassShellMomentum,
    as_four_vector,
    minkowski_dot,
    momentum_from_spatial,
    validate_sl2c,
)

NORM_TOL = 1e-8


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class QubitWavePacket:
    """Weighted momentum samples with amplitude pairs (f0, f1).

    momenta: (n, 4) on-shell four-momenta; weights: (n,) positive;
    amps: (n, 2) complex.  All samples share one mass.
    """

    momenta: np.ndarray
    weights: np.ndarray
    amps: np.ndarray
    axis: QuantizationAxis
    mass: float

    def __post_init__(self):
        momenta = np.asarray(self.momenta, dtype=float).reshape(-1, 4)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        amps = np.asarray(self.amps, dtype=complex).reshape(-1, 2)
        if not (len(momenta) == len(weights) == len(amps)):
            raise RelQubitError("samples, weights and amplitudes must align")
        if np.any(weights <= 0.0):
            raise RelQubitError("weights must be positive")
        object.__setattr__(self, "momenta", _freeze(momenta))
        object.__setattr__(self, "weights", _freeze(weights))
        object.__setattr__(self, "amps", _freeze(amps))
        object.__setattr__(self, "mass", float(self.mass))
        for vec in momenta:  # validates the shell constraint sample by sample
            MassShellMomentum(vec, self.mass)

    def __len__(self) -> int:
        return len(self.weights)

    def sample_momentum(self, i: int) -> MassShellMomentum:
        return MassShellMomentum(self.momenta[i], self.mass)


@dataclass(frozen=True)
class PhotonWavePacket(QubitWavePacket):
    """Null-momentum packet; the amplitude pair is (f00, f11).

    Amplitudes transform with the squared diagonal little-group phases.
    """

    def __post_init__(self):
        if self.mass != 0.0:
            raise RelQubitError("photon packets require mass = 0")
        if self.axis.kind is not AxisKind.NULL_PND:
            raise RelQubitError("photon packets use a null generator axis")
        super().__post_init__()


def packet_norm(packet: QubitWavePacket) -> float:
    """sqrt of sum_i w_i (|f0_i|^2 + |f1_i|^2)."""
    return float(np.sqrt(packet.weights @ (np.abs(packet.amps) ** 2).sum(axis=1)))


def normalize(packet: QubitWavePacket) -> QubitWavePacket:
    n = packet_norm(packet)
    if n == 0.0:
        raise NotNormalized("zero-norm packet")
    return replace(packet, amps=packet.amps / n)


def make_gaussian_packet(
    center,
    spread: float,
    angular_spread: float,
    n_samples: int,
    seed: int,
    axis: QuantizationAxis,
    mass: float,
    spin=(1.0, 0.0),
) -> QubitWavePacket:
    """Seeded Gaussian momentum cloud around the center direction.

    ``center`` is a spatial 3-momentum (or a four-vector whose spatial part
    is used): its direction is the packet axis and its length the mean
    momentum.  Magnitudes are |N(mean, spread)| and polar angles
    |N(0, angular_spread)|; angular_spread = 0 puts every sample on one ray.
    The same seed reproduces the samples bitwise.
    """
    center = np.asarray(center, dtype=float).reshape(-1)
    spatial = center[1:4] if center.size == 4 else center
    if spatial.size != 3:
        raise RelQubitError("center must be a 3- or 4-vector")
    if spread < 0.0 or not 0.0 <= angular_spread <= np.pi or n_samples < 1:
        raise RelQubitError("invalid packet spreads or sample count")
    mean_q = float(np.linalg.norm(spatial))
    direction = spatial / mean_q if mean_q > 0.0 else np.array([0.0, 0.0, 1.0])
    if mass == 0.0 and mean_q == 0.0 and spread == 0.0:
        raise RelQubitError("massless packet needs a nonzero momentum")

    rng = np.random.default_rng(int(seed))
    mags = np.abs(mean_q + spread * rng.standard_normal(n_samples))
    thetas = np.minimum(np.abs(angular_spread * rng.standard_normal(n_samples)), np.pi)
    phis = rng.uniform(0.0, 2.0 * np.pi, size=n_samples)
    if mass == 0.0:
        mags = np.maximum(mags, 1e-9 * max(mean_q, spread))

    # orthonormal triad around the packet direction
    if abs(direction[2]) < 0.999:
        e1 = np.cross([0.0, 0.0, 1.0], direction)
    else:
        e1 = np.array([1.0, 0.0, 0.0])
    e1 = e1 / np.linalg.norm(e1)
    e2 = np.cross(direction, e1)

    momenta = np.empty((n_samples, 4))
    for i in range(n_samples):
        n_hat = (
            np.sin(thetas[i]) * (np.cos(phis[i]) * e1 + np.sin(phis[i]) * e2)
            + np.cos(thetas[i]) * direction
        )
        momenta[i] = momentum_from_spatial(mags[i] * n_hat, mass).vector

    spin = np.asarray(spin, dtype=complex).reshape(2)
    spin = spin / np.linalg.norm(spin)
    weights = np.full(n_samples, 1.0 / n_samples)
    amps = np.tile(spin, (n_samples, 1))
    cls = PhotonWavePacket if mass == 0.0 else QubitWavePacket
    return cls(momenta=momenta, weights=weights, amps=amps, axis=axis, mass=mass)


def make_gaussian_photon_packet(
    center, spread, angular_spread, n_samples, seed, axis, spin=(1.0, 0.0)
) -> PhotonWavePacket:
    return make_gaussian_packet(
        center, spread, angular_spread, n_samples, seed, axis, 0.0, spin
    )


def _axis_w(axis: QuantizationAxis, p: MassShellMomentum) -> np.ndarray | None:
    """Basis-change matrix from the generator's omega basis, None if identity."""
    if axis.kind is AxisKind.NULL_PND:
        return None
    return basis_change(make_spin_frame(axis.nu, p), axis).w


def _cross_generator(nu_from, nu_to, p: MassShellMomentum) -> np.ndarray | None:
    """Map omega-basis amplitudes between two generators at p."""
    if rays_parallel(nu_from, nu_to):
        return None
    if p.mass > 0.0:
        if rays_parallel(nu_from, NU_MINUS) and rays_parallel(nu_to, NU_PLUS):
            return bb84_change_matrix(p)
        if rays_parallel(nu_from, NU_PLUS) and rays_parallel(nu_to, NU_MINUS):
            return bb84_change_matrix(p).conj().T
    frame = make_spin_frame(nu_from, p)
    return basis_change(frame, QuantizationAxis.null_pnd(nu_to)).w


def amplitude_change(
    old_axis: QuantizationAxis, new_axis: QuantizationAxis, p: MassShellMomentum
) -> np.ndarray:
    """Unitary mapping amplitudes referred to old_axis into new_axis at p."""
    m = np.eye(2, dtype=complex)
    w_old = _axis_w(old_axis, p)
    if w_old is not None:
        m = w_old.conj().T @ m
    x = _cross_generator(old_axis.nu, new_axis.nu, p)
    if x is not None:
        m = x @ m
    w_new = _axis_w(new_axis, p)
    if w_new is not None:
        m = w_new @ m
    return m


def rebase(packet: QubitWavePacket, new_axis: QuantizationAxis) -> QubitWavePacket:
    """Re-express the packet amplitudes on another quantization axis."""
    if isinstance(packet, PhotonWavePacket):
        raise MasslessUnsupported("photon packets are not rebased")
    new_amps = np.empty_like(packet.amps)
    for i in range(len(packet)):
        m = amplitude_change(packet.axis, new_axis, packet.sample_momentum(i))
        new_amps[i] = m @ packet.amps[i]
    return replace(packet, amps=new_amps, axis=new_axis)


def poincare_transform(packet: QubitWavePacket, y, L) -> QubitWavePacket:
    """Push the packet forward by the transformation (y, L).

    Samples move to L p with weights unchanged; amplitudes pick up
    e^{i y.p'} times the little-group matrix (squared diagonal phases for
    photon packets).  The norm is preserved.
    """
    L = validate_sl2c(L)
    y = as_four_vector(y)
    axis = packet.axis
    is_photon = isinstance(packet, PhotonWavePacket)

    if np.array_equal(L, np.eye(2)):
        # exact identity: the little-group matrix is I and momenta are fixed,
        # so only the translation phases apply (byte-stable at y = 0)
        if not np.any(y):
            return packet
        phases = np.array(
            [np.exp(1j * minkowski_dot(y, pv)) for pv in packet.momenta]
        )
        return replace(packet, amps=packet.amps * phases[:, None])

    new_momenta = np.empty_like(packet.momenta)
    new_amps = np.empty_like(packet.amps)
    for i in range(len(packet)):
        p_old = packet.sample_momentum(i)
        p_new = p_old.boosted(L)
        new_momenta[i] = p_new.vector
        phase = np.exp(1j * minkowski_dot(y, p_new.vector))
        if is_photon:
            u00 = wigner_matrix_massless(L, p_new, axis.nu).u[0, 0]
            diag = np.array([u00 * u00, np.conj(u00) * np.conj(u00)])
            new_amps[i] = phase * diag * packet.amps[i]
            continue
        if packet.mass == 0.0:
            u = wigner_matrix_massless(L, p_new, axis.nu).u
        else:
            u = wigner_matrix(L, p_new, axis.nu).u
        if axis.kind is not AxisKind.NULL_PND:
            w_new = _axis_w(axis, p_new)
            w_old = _axis_w(axis, p_old)
            u = w_new @ u @ w_old.conj().T
        new_amps[i] = phase * (u @ packet.amps[i])
    return replace(packet, momenta=new_momenta, amps=new_amps)


def reduced_density_matrix(packet: QubitWavePacket) -> np.ndarray:
    """rho = sum_i w_i f_i f_i^dagger for a normalized packet."""
    n = packet_norm(packet)
    if abs(n - 1.0) > NORM_TOL:
        raise NotNormalized(f"packet norm is {n}; call normalize() first")
    rho = np.einsum("i,ia,ib->ab", packet.weights, packet.amps, packet.amps.conj())
    return 0.5 * (rho + rho.conj().T)


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)


def degree_of_polarization(rho: np.ndarray) -> float:
    """Bloch length r = sqrt(2 Tr(rho^2) - 1), clipped to [0, 1]."""
    return float(np.sqrt(np.clip(2.0 * purity(rho) - 1.0, 0.0, 1.0)))


def product_form_residual(packet: QubitWavePacket) -> float:
    """1 - purity of the reduced density matrix.

    Zero exactly when spin and momentum factorize (up to per-sample global
    phases), which is the natural entanglement witness at this resolution.
    """
    return float(np.clip(1.0 - purity(reduced_density_matrix(packet)), 0.0, 1.0))


# ---------------------------------------------------------------------------
# JSON serialization (decimal-exact: repr round-trips every float)

def _complex_pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _axis_to_json(axis: QuantizationAxis) -> dict:
    if axis.kind is AxisKind.CUSTOM:
        raise RelQubitError("custom axes are not serializable")
    out = {"kind": axis.kind.value, "nu": [*_complex_pair(axis.nu[0]), *_complex_pair(axis.nu[1])]}
    if axis.t is not None:
        out["t"] = [float(x) for x in axis.t]
    return out


def _axis_from_json(obj: dict) -> QuantizationAxis:
    kind = AxisKind(obj["kind"])
    nu = np.array([complex(obj["nu"][0], obj["nu"][1]), complex(obj["nu"][2], obj["nu"][3])])
    if kind is AxisKind.NULL_PND:
        return QuantizationAxis.null_pnd(nu)
    if kind is AxisKind.TIMELIKE:
        return QuantizationAxis.timelike(np.asarray(obj["t"], dtype=float), nu)
    if kind is AxisKind.SPACELIKE:
        return QuantizationAxis.spacelike(np.asarray(obj["t"], dtype=float), nu)
    raise RelQubitError(f"cannot deserialize axis kind {kind}")


def packet_to_json(packet: QubitWavePacket) -> str:
    is_photon = isinstance(packet, PhotonWavePacket)
    k0, k1 = ("f00", "f11") if is_photon else ("f0", "f1")
    samples = [
        {
            "p": [float(x) for x in packet.momenta[i]],
            "w": float(packet.weights[i]),
            k0: _complex_pair(packet.amps[i, 0]),
            k1: _complex_pair(packet.amps[i, 1]),
        }
        for i in range(len(packet))
    ]
    doc = {"mass": float(packet.mass), "axis": _axis_to_json(packet.axis), "samples": samples}
    if is_photon:
        doc["kind"] = "photon"
    return json.dumps(doc)


def packet_from_json(text: str) -> QubitWavePacket:
    doc = json.loads(text)
    is_photon = doc.get("kind") == "photon"
    k0, k1 = ("f00", "f11") if is_photon else ("f0", "f1")
    axis = _axis_from_json(doc["axis"])
    momenta = np.array([s["p"] for s in doc["samples"]], dtype=float)
    weights = np.array([s["w"] for s in doc["samples"]], dtype=float)
    amps = np.array(
        [
            [complex(*s[k0]), complex(*s[k1])]
            for s in doc["samples"]
        ],
        dtype=complex,
    )
    cls = PhotonWavePacket if is_photon else QubitWavePacket
    return cls(momenta=momenta, weights=weights, amps=amps, axis=axis, mass=float(doc["mass"]))
