"""Two-spinor and Minkowski-space primitives.

Fixed conventions (used consistently across the whole library):

* Metric signature (+,-,-,-); natural units c = hbar = 1.
* Four-vectors are stored as contravariant components ``(t, x, y, z)``.
* Spinors are stored as their two lower-index components ``(k_0, k_1)``.
* Epsilon: ``eps_{01} = eps^{01} = +1``; raising acts on the second index,
  ``k^A = eps^{AB} k_B``, so ``k^0 = k_1`` and ``k^1 = -k_0``.
* Soldering: a vector ``v`` is represented by the Hermitian matrix of its
  covector in the lower-index form,

      vector_to_matrix(v) = (1/sqrt2) [[t - z, -x + iy], [-x - iy, t + z]]

  which makes ``vector_to_matrix(flagpole(nu))`` equal ``nu nu^dagger``
  with proportionality constant exactly 1, and gives the flagpole
  pinning ``flagpole((1,0)) ~ (1,0,0,-1)``, ``flagpole((0,1)) ~ (1,0,0,+1)``.
* SL(2,C) acts on lower-index spinors by plain matrix multiplication and
  on vectors by ``vector_to_matrix(Lv) = L vector_to_matrix(v) L^dagger``.

These choices make the spin-frame normalization ``omega_A pi^A = 1`` and the
momentum split into two flagpoles hold simultaneously; both are enforced by
tests rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidMatrix,
    InvalidSL2C,
    InvalidSpinor,
    OffShellMomentum,
    SuperluminalBoost,
)

SQRT2 = float(np.sqrt(2.0))

# eps^{AB} (and eps_{AB}) as a matrix: EPS[0,1] = +1.
EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])

# Exact identities (unitarity, det, isometry) are tested at this relative
# tolerance everywhere in the library.
TOL_EXACT = 1e-12
# Constructed-quantity identities (frames, little-group matrices).
TOL_FRAME = 1e-10
# Composed quantities accumulate one extra rounding step.
TOL_COCYCLE = 1e-9


def as_spinor(nu) -> np.ndarray:
    """Coerce to a length-2 complex array of lower-index components."""
    arr = np.asarray(nu, dtype=complex).reshape(2)
    if not np.all(np.isfinite(arr.view(float))):
        raise InvalidSpinor("spinor components must be finite")
    return arr


def as_four_vector(v) -> np.ndarray:
    """Coerce to a length-4 float array (t, x, y, z)."""
    arr = np.asarray(v, dtype=float).reshape(4)
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix("four-vector components must be finite")
    return arr


def minkowski_dot(v, w) -> float:
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(v[0] * w[0] - v[1] * w[1] - v[2] * w[2] - v[3] * w[3])


@dataclass(frozen=True)
class MassShellMomentum:
    """Future-pointing momentum constrained to p.p = mass^2, mass >= 0."""

    vector: np.ndarray
    mass: float

    def __post_init__(self):
        vec = as_four_vector(self.vector)
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)
        object.__setattr__(self, "mass", float(self.mass))
        if self.mass < 0.0:
            raise OffShellMomentum(f"negative mass {self.mass}")
        p0 = vec[0]
        if p0 <= 0.0:
            raise OffShellMomentum(f"energy must be positive, got {p0}")
        defect = abs(minkowski_dot(vec, vec) - self.mass**2)
        if defect > 1e-10 * max(1.0, p0 * p0):
            raise OffShellMomentum(
                f"p.p = {minkowski_dot(vec, vec)} incompatible with m^2 = {self.mass ** 2}"
            )

    @property
    def energy(self) -> float:
        return float(self.vector[0])

    def boosted(self, L: np.ndarray) -> "MassShellMomentum":
        """Push this momentum forward with an SL(2,C) element."""
        return MassShellMomentum(apply_lorentz(L, self.vector), self.mass)


def momentum_from_spatial(spatial, mass: float) -> MassShellMomentum:
    """Build the on-shell momentum with the given 3-momentum."""
    q = np.asarray(spatial, dtype=float).reshape(3)
    p0 = float(np.sqrt(mass * mass + q @ q))
    if p0 <= 0.0:
        raise OffShellMomentum("massless momentum needs a nonzero 3-momentum")
    return MassShellMomentum(np.array([p0, *q]), mass)


def eps_contract(kappa, mu) -> complex:
    """kappa_A mu^A = kappa_0 mu_1 - kappa_1 mu_0 (antisymmetric)."""
    kappa = as_spinor(kappa)
    mu = as_spinor(mu)
    return complex(kappa[0] * mu[1] - kappa[1] * mu[0])


def raise_index(kappa) -> np.ndarray:
    """k^A = eps^{AB} k_B: (k0, k1) -> (k1, -k0)."""
    kappa = as_spinor(kappa)
    return np.array([kappa[1], -kappa[0]])


def vector_to_matrix(v) -> np.ndarray:
    """Hermitian 2x2 lower-index soldering of a four-vector."""
    t, x, y, z = as_four_vector(v)
    return np.array(
        [[t - z, -x + 1j * y], [-x - 1j * y, t + z]], dtype=complex
    ) / SQRT2


def matrix_to_vector(M) -> np.ndarray:
    """Inverse of vector_to_matrix; rejects non-Hermitian input."""
    M = np.asarray(M, dtype=complex).reshape(2, 2)
    if np.abs(M - M.conj().T).max() > 1e-12 * max(1.0, np.abs(M).max()):
        raise InvalidMatrix("matrix is not Hermitian")
    t = (M[0, 0] + M[1, 1]).real / SQRT2
    z = (M[1, 1] - M[0, 0]).real / SQRT2
    x = -SQRT2 * (M[0, 1].real)
    y = SQRT2 * (M[0, 1].imag)
    return np.array([t, x, y, z])


def vector_to_matrix_upper(v) -> np.ndarray:
    """Upper-index soldering p^{AA'} = (1/sqrt2)(p0 + p.sigma)."""
    t, x, y, z = as_four_vector(v)
    return np.array(
        [[t + z, x + 1j * y], [x - 1j * y, t - z]], dtype=complex
    ) / SQRT2


def flagpole(nu) -> np.ndarray:
    """Null future-pointing vector of nu: the covector nu_A nubar_{A'}.

    Scales as flagpole(c * nu) = |c|^2 flagpole(nu).
    """
    nu = as_spinor(nu)
    if np.abs(nu).max() == 0.0:
        raise InvalidSpinor("zero spinor has no flagpole")
    return matrix_to_vector(np.outer(nu, nu.conj()))


def validate_sl2c(L) -> np.ndarray:
    """Coerce to 2x2 complex and require |det - 1| <= 1e-12."""
    L = np.asarray(L, dtype=complex).reshape(2, 2)
    det = L[0, 0] * L[1, 1] - L[0, 1] * L[1, 0]
    if abs(det - 1.0) > TOL_EXACT * max(1.0, float(np.abs(L).max()) ** 2):
        raise InvalidSL2C(f"det = {det}, not an SL(2,C) element")
    return L


def sl2c_inverse(L) -> np.ndarray:
    """Inverse of an SL(2,C) element: [[d,-b],[-c,a]]."""
    L = np.asarray(L, dtype=complex).reshape(2, 2)
    return np.array([[L[1, 1], -L[0, 1]], [-L[1, 0], L[0, 0]]])


def apply_lorentz(L, v) -> np.ndarray:
    """Act on a four-vector through the soldering map."""
    L = np.asarray(L, dtype=complex)
    return matrix_to_vector(L @ vector_to_matrix(v) @ L.conj().T)


def sl2c_to_lorentz(L) -> np.ndarray:
    """The 4x4 proper orthochronous Lorentz matrix induced by L."""
    L = validate_sl2c(L)
    cols = [apply_lorentz(L, e) for e in np.eye(4)]
    return np.column_stack(cols)


def boost_z(beta: float) -> np.ndarray:
    """Boost along z: diag(w^{1/2}, w^{-1/2}) with w = sqrt((1+beta)/(1-beta))."""
    beta = float(beta)
    if abs(beta) >= 1.0:
        raise SuperluminalBoost(f"|beta| = {abs(beta)} >= 1")
    w = np.sqrt((1.0 + beta) / (1.0 - beta))
    return np.array([[np.sqrt(w), 0.0], [0.0, 1.0 / np.sqrt(w)]], dtype=complex)


def boost_z_rapidity(xi: float) -> np.ndarray:
    """Boost along z with rapidity xi (w = e^xi)."""
    return np.array(
        [[np.exp(xi / 2.0), 0.0], [0.0, np.exp(-xi / 2.0)]], dtype=complex
    )


def rotation_z(theta: float) -> np.ndarray:
    """Rotation about z: diag(e^{i theta/2}, e^{-i theta/2})."""
    ph = np.exp(0.5j * theta)
    return np.array([[ph, 0.0], [0.0, np.conj(ph)]], dtype=complex)


def rotation_x(theta: float) -> np.ndarray:
    """Rotation about x: cos(theta/2) I + i sin(theta/2) sigma_x."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


def null_rotation(alpha: complex) -> np.ndarray:
    """Parabolic element [[1, alpha], [0, 1]]; its sole PND is (1, 0)."""
    return np.array([[1.0, alpha], [0.0, 1.0]], dtype=complex)


NU_MINUS = np.array([1.0 + 0j, 0.0 + 0j], dtype=complex)
NU_MINUS.setflags(write=False)
NU_PLUS = np.array([0.0 + 0j, 1.0 + 0j], dtype=complex)
NU_PLUS.setflags(write=False)
