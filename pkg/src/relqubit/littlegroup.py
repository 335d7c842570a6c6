"""Little-group matrices acting on two-component momentum amplitudes.

The matrix U(L, p) multiplying the amplitude pair under a Lorentz
transformation is built from transported spin frames: with a = omega_A(p)
(L pi)^A(p) and b = -(m/sqrt2) omega_A(p) (L omega)^A(p),

    U = [[a, b], [-conj(b), conj(a)]]  in SU(2)        (massive)
    U = diag(a, conj(a)), |a| = 1                      (massless)

where (L pi)(p) = pi(L nu, p) by the frame transport laws.  When nu is an
eigenspinor of L with eigenvalue |lambda| e^{i phi}, U collapses to
diag(e^{-i phi}, e^{+i phi}) for every momentum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrame, MasslessUnsupported, NotPND, TopologicalObstruction
from .frames import make_spin_frame
from .pnd import PND_RESIDUAL, eigen_residual, rayleigh_eigenvalue
from .spinor import (
    MassShellMomentum,
    SQRT2,
    as_spinor,
    eps_contract,
    sl2c_inverse,
    validate_sl2c,
)


@dataclass(frozen=True)
class WignerMatrix:
    """2x2 amplitude transformation at momentum p for the element L."""

    u: np.ndarray
    p: MassShellMomentum
    L: np.ndarray
    frame_generator: np.ndarray


def _transported_contractions(L, p: MassShellMomentum, nu):
    L = validate_sl2c(L)
    nu = as_spinor(nu)
    here = make_spin_frame(nu, p)
    moved = make_spin_frame(L @ nu, p)
    a = eps_contract(here.omega, moved.pi)
    b_raw = eps_contract(here.omega, moved.omega)
    return a, b_raw


def wigner_matrix(L, p: MassShellMomentum, nu) -> WignerMatrix:
    """SU(2) little-group matrix for a massive momentum."""
    if p.mass == 0.0:
        raise MasslessUnsupported("use wigner_matrix_massless for null momenta")
    a, b_raw = _transported_contractions(L, p, nu)
    b = -(p.mass / SQRT2) * b_raw
    u = np.array([[a, b], [-np.conj(b), np.conj(a)]])
    return WignerMatrix(u=u, p=p, L=np.asarray(L, dtype=complex), frame_generator=as_spinor(nu))


def wigner_matrix_massless(L, p: MassShellMomentum, nu) -> WignerMatrix:
    """Diagonal phase matrix for a null momentum.

    Off-diagonal entries are exact zeros; both diagonal entries are
    unimodular.  Raises TopologicalObstruction when p is parallel to the
    flagpole of nu (spin frame undefined there).
    """
    if p.mass != 0.0:
        raise MasslessUnsupported("momentum is massive; use wigner_matrix")
    try:
        a, _ = _transported_contractions(L, p, nu)
    except DegenerateFrame as exc:
        raise TopologicalObstruction(str(exc)) from exc
    u = np.array([[a, 0.0], [0.0, np.conj(a)]])
    return WignerMatrix(u=u, p=p, L=np.asarray(L, dtype=complex), frame_generator=as_spinor(nu))


def wigner_for_mass(L, p: MassShellMomentum, nu) -> WignerMatrix:
    """Dispatch on the mass of p."""
    if p.mass == 0.0:
        return wigner_matrix_massless(L, p, nu)
    return wigner_matrix(L, p, nu)


def cocycle_residual(L1, L2, p: MassShellMomentum, nu) -> float:
    """||U(L1 L2, p) - U(L1, p) U(L2, L1^-1 p)||_max."""
    L1 = validate_sl2c(L1)
    L2 = validate_sl2c(L2)
    q = p.boosted(sl2c_inverse(L1))
    u_joint = wigner_for_mass(L1 @ L2, p, nu).u
    u_split = wigner_for_mass(L1, p, nu).u @ wigner_for_mass(L2, q, nu).u
    return float(np.abs(u_joint - u_split).max())


def pnd_phase(L, nu) -> float:
    """Phase phi of the eigenvalue of nu under L; U = diag(e^{-i phi}, e^{i phi}).

    Raises NotPND unless nu is an eigenspinor of L within the standard
    residual.
    """
    L = validate_sl2c(L)
    res = eigen_residual(L, nu)
    if res > PND_RESIDUAL:
        raise NotPND(f"eigen-residual {res} exceeds {PND_RESIDUAL}")
    return float(np.angle(rayleigh_eigenvalue(L, nu)))
