"""Monte-Carlo BB84 between a resting sender and a moving receiver.

Each round, Alice draws a bit and a basis, prepares a product-form packet
in the configured encoding, and the state reaches Bob transformed by the
trajectory step of that round.  Bob measures the reduced spin density
matrix projectively in his own (optionally phase-corrected) basis; rounds
with matching bases are sifted and the error rate over them is the QBER.

The only noise in the model is relativistic kinematics: there is no
eavesdropper and the channel is otherwise ideal.  Measurement statistics
per (step, preparation) are precomputed once, which is exact because the
channel is linear; rounds then only consume per-round RNG streams, so runs
are reproducible and fast.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import NoSharedPND, RelQubitError
from .littlegroup import pnd_phase
from .pnd import PND_RESIDUAL, eigen_residual, shared_pnd
from .observables import QuantizationAxis
from .spinor import NU_MINUS, boost_z, null_rotation, validate_sl2c
from .wavepacket import (
    make_gaussian_packet,
    poincare_transform,
    reduced_density_matrix,
)

BASIS_NAMES = ("rectilinear", "diagonal")

_INV_SQRT2 = 1.0 / np.sqrt(2.0)
DEFAULT_BASIS_PAIR = (
    (
        np.array([_INV_SQRT2, _INV_SQRT2], dtype=complex),
        np.array([_INV_SQRT2, -_INV_SQRT2], dtype=complex),
    ),
    (
        np.array([_INV_SQRT2, 1j * _INV_SQRT2], dtype=complex),
        np.array([_INV_SQRT2, -1j * _INV_SQRT2], dtype=complex),
    ),
)


class EncodingKind(enum.Enum):
    PND_BASIS = "pnd"
    HELICITY_BASIS = "helicity"


@dataclass(frozen=True)
class EncodingScheme:
    """Qubit encoding: quantization-axis choice plus two measurement bases.

    The default bases are the rectilinear pair (1,1)/sqrt2, (1,-1)/sqrt2 and
    the diagonal pair (1,i)/sqrt2, (1,-i)/sqrt2: orthonormal and mutually
    unbiased, with at least one of them of the linear-polarization type.
    """

    kind: EncodingKind
    nu: np.ndarray = field(default_factory=lambda: NU_MINUS.copy())
    basis_pair: tuple = DEFAULT_BASIS_PAIR

    def __post_init__(self):
        object.__setattr__(self, "nu", np.asarray(self.nu, dtype=complex).reshape(2))
        for states in self.basis_pair:
            for e in states:
                if abs(np.vdot(e, e) - 1.0) > 1e-12:
                    raise RelQubitError("basis states must be normalized")
            if abs(np.vdot(states[0], states[1])) > 1e-12:
                raise RelQubitError("basis states must be orthogonal")
        for e in self.basis_pair[0]:
            for f in self.basis_pair[1]:
                if abs(abs(np.vdot(e, f)) ** 2 - 0.5) > 1e-12:
                    raise RelQubitError("bases must be mutually unbiased")

    def axis(self, mass: float) -> QuantizationAxis:
        if self.kind is EncodingKind.PND_BASIS or mass == 0.0:
            # for photons the amplitude pair is diagonal in every generator
            # frame; the encoding kind only picks the generator
            return QuantizationAxis.null_pnd(self.nu)
        return QuantizationAxis.helicity(self.nu)


class TrajectoryKind(enum.Enum):
    Z_BOOST_PROFILE = "z_boost"
    BOOST_PLUS_NULL_ROTATION = "boost_null_rotation"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Trajectory:
    """Emission-event transformations Lambda(s_k); rounds cycle through them."""

    steps: tuple
    label: TrajectoryKind = TrajectoryKind.CUSTOM

    def __post_init__(self):
        steps = tuple(validate_sl2c(L) for L in self.steps)
        if not steps:
            raise RelQubitError("trajectory needs at least one step")
        object.__setattr__(self, "steps", steps)

    @staticmethod
    def z_boost_profile(betas) -> "Trajectory":
        return Trajectory(
            steps=tuple(boost_z(b) for b in betas),
            label=TrajectoryKind.Z_BOOST_PROFILE,
        )

    @staticmethod
    def boost_plus_null_rotation(betas, alphas) -> "Trajectory":
        steps = tuple(
            boost_z(b) @ null_rotation(a) for b, a in zip(betas, alphas, strict=True)
        )
        return Trajectory(steps=steps, label=TrajectoryKind.BOOST_PLUS_NULL_ROTATION)


@dataclass(frozen=True)
class PacketSpec:
    """Shape of the product-form packet Alice prepares each round."""

    mass: float = 1.0
    mean_momentum: float = 1.0
    spread: float = 0.0
    angular_spread: float = 0.0
    n_samples: int = 1
    seed: int = 0
    direction: tuple = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BB84Config:
    n_rounds: int
    seed: int
    packet: PacketSpec
    trajectory: Trajectory
    encoding: EncodingScheme
    apply_correction: bool = False


@dataclass(frozen=True)
class QberReport:
    rounds: int
    sifted: int
    errors: int
    qber: float
    per_basis: dict
    correction_applied: bool
    encoding: str
    expected_qber: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "sifted": self.sifted,
            "errors": self.errors,
            "qber": self.qber,
            "per_basis": self.per_basis,
            "correction_applied": self.correction_applied,
            "encoding": self.encoding,
            "expected_qber": self.expected_qber,
            "seed": self.seed,
        }


def correction_rotation(phi: float) -> np.ndarray:
    """diag(e^{+i phi}, e^{-i phi}): inverse of the PND little-group matrix."""
    ph = np.exp(1j * phi)
    return np.array([[ph, 0.0], [0.0, np.conj(ph)]], dtype=complex)


def config_from_dict(doc: dict) -> BB84Config:
    """Build a BB84Config from the JSON document layout used by the CLI."""
    try:
        packet_doc = doc.get("packet", {})
        packet = PacketSpec(
            mass=float(packet_doc.get("mass", 1.0)),
            mean_momentum=float(packet_doc.get("mean_momentum", 1.0)),
            spread=float(packet_doc.get("spread", 0.0)),
            angular_spread=float(packet_doc.get("angular_spread", 0.0)),
            n_samples=int(packet_doc.get("n_samples", 1)),
            seed=int(packet_doc.get("seed", 0)),
            direction=tuple(packet_doc.get("direction", (0.0, 0.0, 1.0))),
        )
        traj_doc = doc["trajectory"]
        kind = TrajectoryKind(traj_doc["kind"])
        if kind is TrajectoryKind.Z_BOOST_PROFILE:
            trajectory = Trajectory.z_boost_profile([float(b) for b in traj_doc["betas"]])
        elif kind is TrajectoryKind.BOOST_PLUS_NULL_ROTATION:
            alphas = [complex(a[0], a[1]) for a in traj_doc["alphas"]]
            trajectory = Trajectory.boost_plus_null_rotation(
                [float(b) for b in traj_doc["betas"]], alphas
            )
        else:
            steps = tuple(
                np.array(
                    [[complex(*m[0][0]), complex(*m[0][1])],
                     [complex(*m[1][0]), complex(*m[1][1])]]
                )
                for m in traj_doc["steps"]
            )
            trajectory = Trajectory(steps=steps)
        enc_doc = doc["encoding"]
        if "nu" in enc_doc:
            raw = enc_doc["nu"]
            nu = np.array([complex(raw[0], raw[1]), complex(raw[2], raw[3])])
        else:
            nu = NU_MINUS.copy()
        encoding = EncodingScheme(kind=EncodingKind(enc_doc["kind"]), nu=nu)
        return BB84Config(
            n_rounds=int(doc["n_rounds"]),
            seed=int(doc["seed"]),
            packet=packet,
            trajectory=trajectory,
            encoding=encoding,
            apply_correction=bool(doc.get("apply_correction", False)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise RelQubitError(f"malformed BB84 config: {exc}") from exc


def _base_packet(config: BB84Config):
    spec = config.packet
    center = spec.mean_momentum * np.asarray(spec.direction, dtype=float)
    axis = config.encoding.axis(spec.mass)
    return make_gaussian_packet(
        center,
        spec.spread,
        spec.angular_spread,
        spec.n_samples,
        spec.seed,
        axis,
        spec.mass,
    )


def _correction_phases(config: BB84Config) -> list[float]:
    """Per-step correction phase from the trajectory's common eigenspinor."""
    steps = config.trajectory.steps
    if config.encoding.kind is EncodingKind.PND_BASIS:
        nu = config.encoding.nu
        if any(eigen_residual(L, nu) > PND_RESIDUAL for L in steps):
            raise NoSharedPND("encoding generator is not a PND of every step")
    else:
        nu = shared_pnd(steps)
        if nu is None:
            raise NoSharedPND("trajectory has no common PND to correct against")
    return [pnd_phase(L, nu) for L in steps]


def _outcome_probabilities(config: BB84Config):
    """P(bob_bit = 1 | step, alice_basis, alice_bit, bob_basis) plus QBER terms.

    Measurement statistics only involve the reduced density matrix of the
    transformed packet, so they are exact per preparation and step.
    """
    if config.encoding.kind is EncodingKind.PND_BASIS:
        nu = config.encoding.nu
        if any(eigen_residual(L, nu) > PND_RESIDUAL for L in config.trajectory.steps):
            raise NoSharedPND("encoding generator is not a PND of every step")
    base = _base_packet(config)
    bases = config.encoding.basis_pair
    corrections = (
        _correction_phases(config) if config.apply_correction else None
    )

    steps = config.trajectory.steps
    p_one = np.empty((len(steps), 2, 2, 2))
    p_err = np.empty((len(steps), 2, 2))
    for s, L in enumerate(steps):
        corr = (
            correction_rotation(corrections[s]) if corrections is not None else None
        )
        for b, states in enumerate(bases):
            for x, e in enumerate(states):
                prep = replace(base, amps=np.tile(e, (len(base), 1)))
                rho = reduced_density_matrix(poincare_transform(prep, np.zeros(4), L))
                if corr is not None:
                    rho = corr @ rho @ corr.conj().T
                trace = float(np.trace(rho).real)
                for bb, bob_states in enumerate(bases):
                    prob1 = float(np.vdot(bob_states[1], rho @ bob_states[1]).real)
                    p_one[s, b, x, bb] = min(max(prob1 / trace, 0.0), 1.0)
                # sifted-error probability from the wrong projector directly,
                # so an exactly orthogonal outcome gives exactly zero
                wrong = states[1 - x]
                perr = float(np.vdot(wrong, rho @ wrong).real)
                p_err[s, b, x] = min(max(perr / trace, 0.0), 1.0)
    return p_one, p_err


def expected_qber(config: BB84Config) -> float:
    """Deterministic QBER expectation over steps, bases and bits (no sampling)."""
    _, p_err = _outcome_probabilities(config)
    return float(np.mean(p_err))


def run_bb84(config: BB84Config):
    """Simulate the protocol; returns (QberReport, transcript).

    The transcript has one record per round:
    {round, alice_bit, alice_basis, bob_basis, bob_bit, sifted, error}.
    Per-round RNG streams are derived from (seed, round), so a fixed seed
    reproduces the transcript exactly.
    """
    p_one, p_err = _outcome_probabilities(config)
    n_steps = p_one.shape[0]

    transcript = []
    sifted = errors = 0
    per_basis = {name: {"sifted": 0, "errors": 0} for name in BASIS_NAMES}
    for k in range(config.n_rounds):
        rng = np.random.default_rng(np.random.SeedSequence((config.seed, k)))
        alice_bit = int(rng.integers(2))
        alice_basis = int(rng.integers(2))
        bob_basis = int(rng.integers(2))
        prob1 = p_one[k % n_steps, alice_basis, alice_bit, bob_basis]
        bob_bit = int(rng.random() < prob1)
        is_sifted = alice_basis == bob_basis
        is_error = is_sifted and bob_bit != alice_bit
        if is_sifted:
            sifted += 1
            name = BASIS_NAMES[alice_basis]
            per_basis[name]["sifted"] += 1
            if is_error:
                errors += 1
                per_basis[name]["errors"] += 1
        transcript.append(
            {
                "round": k,
                "alice_bit": alice_bit,
                "alice_basis": alice_basis,
                "bob_basis": bob_basis,
                "bob_bit": bob_bit,
                "sifted": is_sifted,
                "error": is_error,
            }
        )

    for name in BASIS_NAMES:
        stats = per_basis[name]
        stats["qber"] = stats["errors"] / stats["sifted"] if stats["sifted"] else 0.0
    report = QberReport(
        rounds=config.n_rounds,
        sifted=sifted,
        errors=errors,
        qber=errors / sifted if sifted else 0.0,
        per_basis=per_basis,
        correction_applied=config.apply_correction,
        encoding=config.encoding.kind.value,
        expected_qber=float(np.mean(p_err)),
        seed=config.seed,
    )
    return report, transcript
