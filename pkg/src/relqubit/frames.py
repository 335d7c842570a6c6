"""Momentum-dependent spin frames generated by a fixed spinor.

A generator spinor nu and an on-shell momentum p define the frame

    omega_A = nu_A / sqrt(D),   pi^A = p^{AA'} nubar_{A'} / sqrt(D),

with D = p^{BB'} nu_B nubar_{B'} = p . flagpole(nu).  The frame satisfies
omega_A pi^A = 1 and splits the momentum into two flagpoles,
p = flagpole(pi) + (m^2/2) flagpole(omega), and it transports equivariantly:
L pi(nu, L^-1 p) = pi(L nu, p) and likewise for omega.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrame, MasslessUnsupported
from .spinor import (
    MassShellMomentum,
    as_spinor,
    eps_contract,
    flagpole,
    minkowski_dot,
    sl2c_inverse,
    vector_to_matrix_upper,
)

# Accuracy of the frame degrades like sqrt(D), so reject D below this
# relative floor rather than returning a frame with fewer good digits.
DEGENERATE_REL = 1e-8


@dataclass(frozen=True)
class SpinFrame:
    """Spin frame (omega, pi) at momentum p, generated by nu.

    omega and pi are stored as lower-index component pairs.
    """

    omega: np.ndarray
    pi: np.ndarray
    nu: np.ndarray
    p: MassShellMomentum

    def __post_init__(self):
        for name in ("omega", "pi", "nu"):
            arr = as_spinor(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def frame_denominator(nu, p: MassShellMomentum) -> float:
    """D = p . flagpole(nu) (real, nonnegative for future-pointing p)."""
    nu = as_spinor(nu)
    pu = vector_to_matrix_upper(p.vector)
    return float((nu @ pu @ nu.conj()).real)


def make_spin_frame(nu, p: MassShellMomentum) -> SpinFrame:
    """Construct the spin frame of nu at p.

    Raises DegenerateFrame when p . flagpole(nu) is too small; for massless
    momenta this is the topological restriction at p parallel to the
    flagpole of nu.
    """
    nu = as_spinor(nu)
    norm2 = float(np.abs(nu) @ np.abs(nu))
    if norm2 == 0.0:
        raise DegenerateFrame("zero generator spinor")
    D = frame_denominator(nu, p)
    if D <= DEGENERATE_REL * p.energy * norm2:
        raise DegenerateFrame(
            f"p.flagpole(nu) = {D} too small at p0 = {p.energy}"
        )
    root = np.sqrt(D)
    omega = nu / root
    pi_up = (vector_to_matrix_upper(p.vector) @ nu.conj()) / root
    pi = np.array([-pi_up[1], pi_up[0]])  # lower the index
    return SpinFrame(omega=omega, pi=pi, nu=nu, p=p)


def invariant_direction(nu, p: MassShellMomentum) -> np.ndarray:
    """The null axis omega^a(nu, p) = flagpole(nu) / (p . flagpole(nu)).

    Satisfies p . result = 1 and result . result = 0; depends on nu only
    through its ray.
    """
    nu = as_spinor(nu)
    f = flagpole(nu)
    D = minkowski_dot(p.vector, f)
    norm2 = float(np.abs(nu) @ np.abs(nu))
    if D <= DEGENERATE_REL * p.energy * norm2:
        raise DegenerateFrame(
            f"p.flagpole(nu) = {D} too small at p0 = {p.energy}"
        )
    return f / D


def orthogonal_spin_axis(nu, p: MassShellMomentum) -> np.ndarray:
    """omega^a(nu,p) - p^a / m^2: spacelike, orthogonal to p, squared -1/m^2."""
    if p.mass == 0.0:
        raise MasslessUnsupported("orthogonal spin axis needs m > 0")
    return invariant_direction(nu, p) - p.vector / p.mass**2


def frame_normalization_residual(frame: SpinFrame) -> float:
    """|omega_A pi^A - 1|."""
    return abs(eps_contract(frame.omega, frame.pi) - 1.0)


def frame_reconstruction_residual(frame: SpinFrame) -> float:
    """Max-norm defect of p = flagpole(pi) + (m^2/2) flagpole(omega)."""
    m = frame.p.mass
    recon = flagpole(frame.pi) + 0.5 * m * m * flagpole(frame.omega)
    return float(np.abs(recon - frame.p.vector).max())


def frame_equivariance_check(L, nu, p: MassShellMomentum) -> float:
    """Residual of the transport laws for (L, nu, p).

    Compares L pi(nu, L^-1 p) against pi(L nu, p) and the omega analogue;
    returns the larger max-norm difference.
    """
    L = np.asarray(L, dtype=complex)
    q = p.boosted(sl2c_inverse(L))
    back = make_spin_frame(nu, q)
    fwd = make_spin_frame(L @ as_spinor(nu), p)
    res_pi = np.abs(L @ back.pi - fwd.pi).max()
    res_omega = np.abs(L @ back.omega - fwd.omega).max()
    return float(max(res_pi, res_omega))
