"""Principal null directions of SL(2,C) elements.

A PND is the flagpole direction of an eigenspinor L nu = lambda nu; an
SL(2,C) element has one such direction (parabolic), two (generic), or all
of them (proportional to the identity).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .spinor import NU_MINUS, NU_PLUS, as_spinor, validate_sl2c

# Below this relative discriminant the two roots are numerically
# indistinguishable and the element is treated as parabolic.
PARABOLIC_REL = 1e-10

# Eigen-residual allowed when verifying a claimed PND.
PND_RESIDUAL = 1e-8


class PNDKind(enum.Enum):
    TWO_DISTINCT = "two_distinct"
    SINGLE_PARABOLIC = "single_parabolic"
    DEGENERATE_IDENTITY_LIKE = "degenerate_identity_like"


@dataclass(frozen=True)
class PNDResult:
    """Eigenspinors of an SL(2,C) element with their eigenvalues."""

    directions: tuple
    kind: PNDKind

    def spinors(self):
        return [nu for nu, _ in self.directions]

    def eigenvalues(self):
        return [lam for _, lam in self.directions]


def _normalize_ray(nu: np.ndarray) -> np.ndarray:
    """Unit norm, first nonzero component rotated to the positive real axis."""
    nu = nu / np.linalg.norm(nu)
    lead = nu[0] if abs(nu[0]) > 1e-14 else nu[1]
    nu = nu * (abs(lead) / lead)
    # kill negative zeros for reproducible output
    return nu + 0.0


def eigen_residual(L, nu) -> float:
    """||L nu - lambda nu|| / ||nu|| with the least-squares eigenvalue."""
    L = np.asarray(L, dtype=complex)
    nu = as_spinor(nu)
    n2 = float(np.vdot(nu, nu).real)
    if n2 == 0.0:
        return np.inf
    Lnu = L @ nu
    lam = np.vdot(nu, Lnu) / n2
    return float(np.linalg.norm(Lnu - lam * nu) / np.sqrt(n2))


def rayleigh_eigenvalue(L, nu) -> complex:
    """Least-squares eigenvalue of nu under L."""
    L = np.asarray(L, dtype=complex)
    nu = as_spinor(nu)
    return complex(np.vdot(nu, L @ nu) / np.vdot(nu, nu))


def principal_null_directions(L) -> PNDResult:
    """Solve L nu = lambda nu for a unit-determinant 2x2 matrix.

    Roots of lambda^2 - tr(L) lambda + 1 are ordered stably (the root
    avoiding cancellation first); eigenvalues multiply to 1.  Spinors are
    normalized deterministically for reproducibility.
    """
    L = validate_sl2c(L)
    scale2 = float(np.abs(L).max()) ** 2
    tr = L[0, 0] + L[1, 1]
    disc = tr * tr - 4.0

    if abs(disc) <= PARABOLIC_REL * max(1.0, scale2):
        lam = tr / 2.0  # +1 or -1 up to rounding
        if np.abs(L - lam * np.eye(2)).max() <= PARABOLIC_REL * max(1.0, np.sqrt(scale2)):
            # every spinor is an eigenspinor; return the canonical pair
            dirs = ((NU_MINUS.copy(), complex(lam)), (NU_PLUS.copy(), complex(lam)))
            return PNDResult(directions=dirs, kind=PNDKind.DEGENERATE_IDENTITY_LIKE)
        nu = _eigenvector(L, lam)
        return PNDResult(
            directions=((nu, complex(lam)),), kind=PNDKind.SINGLE_PARABOLIC
        )

    s = np.sqrt(disc + 0j)
    if (tr.conjugate() * s).real < 0.0:
        s = -s
    lam1 = (tr + s) / 2.0  # the larger-|.| root: no cancellation
    lam2 = 1.0 / lam1
    dirs = tuple((_eigenvector(L, lam), complex(lam)) for lam in (lam1, lam2))
    return PNDResult(directions=dirs, kind=PNDKind.TWO_DISTINCT)


def _eigenvector(L: np.ndarray, lam: complex) -> np.ndarray:
    # rows of (L - lam I) are both proportional to the left annihilator;
    # pick the better-conditioned kernel vector
    a = L[0, 0] - lam
    d = L[1, 1] - lam
    cand1 = np.array([L[0, 1], -a])   # kernel of the first row
    cand2 = np.array([-d, L[1, 0]])   # kernel of the second row
    nu = cand1 if np.linalg.norm(cand1) >= np.linalg.norm(cand2) else cand2
    if np.linalg.norm(nu) == 0.0:  # L is diagonal with L00 == lam
        nu = np.array([1.0 + 0j, 0.0 + 0j])
    return _normalize_ray(nu)


def shared_pnd(trajectory) -> np.ndarray | None:
    """A spinor that is a PND of every element of the trajectory, or None.

    Elements proportional to the identity constrain nothing and are
    skipped; if all elements are identity-like the canonical (1, 0) is
    returned.  Candidates are taken from the first constraining element,
    so the result is deterministic.
    """
    steps = [validate_sl2c(L) for L in trajectory]
    if not steps:
        raise ValueError("empty trajectory")

    constraining = []
    for L in steps:
        res = principal_null_directions(L)
        if res.kind is not PNDKind.DEGENERATE_IDENTITY_LIKE:
            constraining.append((L, res))
    if not constraining:
        return NU_MINUS.copy()

    _, first = constraining[0]
    for candidate in first.spinors():
        if all(
            eigen_residual(L, candidate) <= PND_RESIDUAL for L, _ in constraining
        ):
            return candidate
    return None
