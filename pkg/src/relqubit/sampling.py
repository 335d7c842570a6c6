"""Seeded random generators for property suites and verification runs."""
from __future__ import annotations

import numpy as np

from .frames import DEGENERATE_REL, frame_denominator
from .spinor import MassShellMomentum, momentum_from_spatial, sl2c_inverse


def random_spinor(rng: np.random.Generator) -> np.ndarray:
    nu = rng.normal(size=2) + 1j * rng.normal(size=2)
    while np.linalg.norm(nu) < 1e-3:
        nu = rng.normal(size=2) + 1j * rng.normal(size=2)
    return nu


def random_sl2c(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Generic SL(2,C) element: Gaussian entries rescaled to unit determinant."""
    while True:
        M = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if abs(det) > 0.05 * scale * scale:
            return M / np.sqrt(det)


def random_momentum(
    rng: np.random.Generator, mass: float, scale: float = 2.0
) -> MassShellMomentum:
    q = rng.normal(scale=scale, size=3)
    while mass == 0.0 and np.linalg.norm(q) < 0.05 * scale:
        q = rng.normal(scale=scale, size=3)
    return momentum_from_spatial(q, mass)


def random_valid_triple(rng: np.random.Generator, mass: float):
    """(L, p, nu) with spin frames valid at p, at L^-1 p and for L nu at p."""
    while True:
        L = random_sl2c(rng)
        p = random_momentum(rng, mass)
        nu = random_spinor(rng)
        q = p.boosted(sl2c_inverse(L))
        ok = True
        for gen, mom in ((nu, p), (nu, q), (L @ nu, p)):
            norm2 = float(np.abs(gen) @ np.abs(gen))
            if frame_denominator(gen, mom) <= 10.0 * DEGENERATE_REL * mom.energy * norm2:
                ok = False
                break
        if ok:
            return L, p, nu


def random_spacelike_orthogonal(rng: np.random.Generator, p: MassShellMomentum) -> np.ndarray:
    """Spacelike axis orthogonal to a massive momentum."""
    from .spinor import minkowski_dot

    while True:
        r = rng.normal(size=4)
        t = r - (minkowski_dot(r, p.vector) / p.mass**2) * p.vector
        if minkowski_dot(t, t) < -1e-6:
            return t
