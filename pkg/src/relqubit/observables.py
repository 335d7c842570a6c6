"""Spin observables from projections of the Pauli-Lubanski vector.

The projection along an axis t has momentum-space eigenvalues
+-(1/2) lambda(t, p) with lambda = sqrt((t.p)^2 - m^2 t.t).  Amplitudes
referred to the null axis omega^a(nu, p) are mapped to amplitudes referred
to a general axis t by an SU(2) matrix W(p) built from the spinor
Omega(t, p); on the frame's own null axis the projection matrix is exactly
-sigma_3/2.

Sign conventions inside Omega carry a one-bit ambiguity (the relative sign
of the primed component); it is pinned here by requiring the construction
to collapse to the closed-form zeta matrix for the nu-minus/nu-plus axis
pair, and is cross-checked by the SU(2) property tests.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ImaginaryLambda, InvalidSpinor, MasslessUnsupported, SingularAxis
from .frames import SpinFrame, invariant_direction
from .spinor import (
    EPS,
    MassShellMomentum,
    SQRT2,
    as_four_vector,
    as_spinor,
    eps_contract,
    minkowski_dot,
    vector_to_matrix,
)

# Relative size of the normalization bracket below which the Omega
# construction cancels catastrophically.  Above this floor a single
# construction keeps ~4e-12 accuracy (measured), so even differences of two
# constructions stay an order of magnitude inside the 1e-10 contracts.
SINGULAR_BRACKET_REL = 1e-2

PROJECTION_SIGMA3 = np.diag([-0.5 + 0j, 0.5 + 0j])


class AxisKind(enum.Enum):
    NULL_PND = "null_pnd"
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    CUSTOM = "custom"


@dataclass(frozen=True)
class QuantizationAxis:
    """Axis along which the Pauli-Lubanski vector is projected.

    ``nu`` is the frame generator fixing the phase convention of the basis
    states; for NULL_PND axes it also generates the axis itself, which is
    then null with p . axis = 1 for every p.
    """

    kind: AxisKind
    nu: np.ndarray
    t: np.ndarray | None = None
    axis_fn: object = None

    def __post_init__(self):
        nu = as_spinor(self.nu)
        nu.setflags(write=False)
        object.__setattr__(self, "nu", nu)
        if self.t is not None:
            t = as_four_vector(self.t)
            t.setflags(write=False)
            object.__setattr__(self, "t", t)

    @staticmethod
    def null_pnd(nu) -> "QuantizationAxis":
        return QuantizationAxis(kind=AxisKind.NULL_PND, nu=nu)

    @staticmethod
    def timelike(t, nu) -> "QuantizationAxis":
        t = as_four_vector(t)
        if minkowski_dot(t, t) <= 0.0:
            raise ValueError("timelike axis needs t.t > 0")
        return QuantizationAxis(kind=AxisKind.TIMELIKE, nu=nu, t=t)

    @staticmethod
    def spacelike(t, nu) -> "QuantizationAxis":
        t = as_four_vector(t)
        if minkowski_dot(t, t) >= 0.0:
            raise ValueError("spacelike axis needs t.t < 0")
        return QuantizationAxis(kind=AxisKind.SPACELIKE, nu=nu, t=t)

    @staticmethod
    def helicity(nu) -> "QuantizationAxis":
        """The t = (1,0,0,0) axis; its projection is proportional to helicity."""
        return QuantizationAxis.timelike(np.array([1.0, 0.0, 0.0, 0.0]), nu)

    @staticmethod
    def custom(axis_fn, nu) -> "QuantizationAxis":
        return QuantizationAxis(kind=AxisKind.CUSTOM, nu=nu, axis_fn=axis_fn)

    def axis_vector(self, p: MassShellMomentum) -> np.ndarray:
        if self.kind is AxisKind.NULL_PND:
            return invariant_direction(self.nu, p)
        if self.kind is AxisKind.CUSTOM:
            return as_four_vector(self.axis_fn(p))
        return self.t


def rays_parallel(nu_a, nu_b) -> bool:
    """True when two spinors generate the same ray."""
    nu_a = as_spinor(nu_a)
    nu_b = as_spinor(nu_b)
    na = np.linalg.norm(nu_a)
    nb = np.linalg.norm(nu_b)
    if na == 0.0 or nb == 0.0:
        raise InvalidSpinor("zero spinor has no ray")
    return abs(eps_contract(nu_a, nu_b)) <= 1e-12 * na * nb


def axes_equal(a: QuantizationAxis, b: QuantizationAxis) -> bool:
    if a.kind is not b.kind or not rays_parallel(a.nu, b.nu):
        return False
    if a.kind in (AxisKind.TIMELIKE, AxisKind.SPACELIKE):
        return bool(np.array_equal(a.t, b.t))
    if a.kind is AxisKind.CUSTOM:
        return a.axis_fn is b.axis_fn
    return True


@dataclass(frozen=True)
class BasisChange:
    """SU(2) map from omega-axis amplitudes to t-axis amplitudes at p."""

    w: np.ndarray
    p: MassShellMomentum
    from_axis: QuantizationAxis
    to_axis: QuantizationAxis


def lambda_scalar(t, p: MassShellMomentum) -> float:
    """lambda(t, p) = sqrt((t.p)^2 - m^2 t.t); invariant under t -> t + theta p."""
    t = as_four_vector(t)
    tp = minkowski_dot(t, p.vector)
    tt = minkowski_dot(t, t)
    lam2 = tp * tp - p.mass**2 * tt
    scale = tp * tp + p.mass**2 * abs(tt)
    if lam2 < 0.0:
        if lam2 >= -1e-12 * max(1.0, scale):
            return 0.0
        raise ImaginaryLambda(
            f"(t.p)^2 = {tp * tp} < m^2 t.t = {p.mass ** 2 * tt}"
        )
    return float(np.sqrt(lam2))


def _contract_ul(kappa, mu) -> complex:
    """kappa^A mu_A with both arguments in lower components."""
    return complex((EPS @ kappa) @ mu)


def omega_general(t, frame: SpinFrame):
    """The spinor Omega(t, p) mapping the omega axis to the axis t.

    Returns the pair (unprimed, primed) of lower-index component arrays.
    Raises SingularAxis when the normalization bracket
    8 lambda (lambda + t.p - m^2 t.omega) is zero or relatively tiny.
    """
    t = as_four_vector(t)
    p = frame.p
    m = p.mass
    lam = lambda_scalar(t, p)
    tp = minkowski_dot(t, p.vector)
    t_omega = minkowski_dot(t, invariant_direction(frame.nu, p))

    bracket = 8.0 * lam * (lam + tp - m * m * t_omega)
    bracket_scale = 8.0 * lam * (lam + abs(tp) + m * m * abs(t_omega))
    if bracket <= SINGULAR_BRACKET_REL * bracket_scale:
        raise SingularAxis(
            f"normalization bracket {bracket} below {SINGULAR_BRACKET_REL} of scale {bracket_scale}"
        )
    norm = 1.0 / np.sqrt(bracket)

    Ht = vector_to_matrix(t)
    Hp = vector_to_matrix(p.vector)
    pi = frame.pi
    omega_bar = frame.omega.conj()

    # pi_C t^C_{X'} p_A^{X'}
    mixed = (Hp @ EPS.T) @ (EPS @ Ht).T @ pi
    # t_{AX'} omegabar^{X'}
    lowered = Ht @ (EPS @ omega_bar)
    unprimed = -norm * ((2.0 * lam + tp) * pi - mixed + 1.5 * m * m * lowered)

    # omegabar_{C'} t_X^{C'} p^X_{A'}
    mixed_p = (EPS @ Hp).T @ ((Ht @ EPS.T) @ omega_bar)
    # t_{XA'} pi^X
    lowered_p = Ht.T @ (EPS @ pi)
    # sign of the primed component pinned by the zeta-matrix collapse
    primed = norm * (m / SQRT2) * (
        (2.0 * lam - tp) * omega_bar - mixed_p - 3.0 * lowered_p
    )
    return unprimed, primed


def basis_change(frame: SpinFrame, axis: QuantizationAxis) -> BasisChange:
    """SU(2) matrix W(p) with f(t, p) = W(p) f(omega, p)."""
    t = axis.axis_vector(frame.p)
    unprimed, primed = omega_general(t, frame)
    a = _contract_ul(frame.omega, unprimed)          # omega^A Omega_A
    c = _contract_ul(frame.omega.conj(), primed)     # omegabar^{A'} Omega_{A'}
    w = np.array([[np.conj(a), np.conj(c)], [-c, a]])
    from_axis = QuantizationAxis.null_pnd(frame.nu)
    return BasisChange(w=w, p=frame.p, from_axis=from_axis, to_axis=axis)


def bb84_change_matrix(p: MassShellMomentum) -> np.ndarray:
    """Closed-form map from nu-minus-axis amplitudes to nu-plus-axis ones.

    With zeta = (p1 + i p2)/m = |zeta| e^{i chi} (chi := 0 at zeta = 0):

        W = (1 + |zeta|^2)^{-1/2} [[|zeta|, e^{i chi}], [-e^{-i chi}, |zeta|]]

    Invariant under boosts along the third axis.
    """
    if p.mass == 0.0:
        raise MasslessUnsupported("zeta matrix needs m > 0")
    zeta = complex(p.vector[1], p.vector[2]) / p.mass
    mod = abs(zeta)
    chi = float(np.angle(zeta)) if mod > 0.0 else 0.0
    phase = np.exp(1j * chi)
    return np.array(
        [[mod, phase], [-np.conj(phase), mod]], dtype=complex
    ) / np.sqrt(1.0 + mod * mod)


def pl_projection_matrix(axis: QuantizationAxis, frame: SpinFrame) -> np.ndarray:
    """PL projection along the axis, in the frame's omega basis.

    Hermitian with eigenvalues -+ lambda(t, p)/2; the amplitude pair
    (f0, f1) corresponds to (-1/2, +1/2) on the frame's own axis, where the
    matrix is exactly -sigma_3/2.
    """
    if axis.kind is AxisKind.NULL_PND and rays_parallel(axis.nu, frame.nu):
        # lambda = 1 exactly on the frame's own axis (p.omega = 1, omega^2 = 0)
        return PROJECTION_SIGMA3.copy()
    t = axis.axis_vector(frame.p)
    lam = lambda_scalar(t, frame.p)
    w = basis_change(frame, axis).w
    return w.conj().T @ (lam * PROJECTION_SIGMA3) @ w


def phase_aligned_distance(A, B) -> float:
    """Max-norm distance between A and B after optimal global rephasing of A."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    tr = np.trace(A.conj().T @ B)
    if abs(tr) == 0.0:
        return float(np.abs(A - B).max())
    return float(np.abs(A * (tr / abs(tr)) - B).max())
