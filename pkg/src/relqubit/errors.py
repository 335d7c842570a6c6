"""Exception types raised by the relqubit library."""


class RelQubitError(ValueError):
    """Base class for all relqubit errors."""


class InvalidSpinor(RelQubitError):
    """Zero or non-finite spinor where a flagpole or spin frame is required."""


class InvalidMatrix(RelQubitError):
    """Matrix fails a structural requirement (e.g. not Hermitian)."""


class InvalidSL2C(RelQubitError):
    """2x2 complex matrix whose determinant is not 1."""


class SuperluminalBoost(RelQubitError):
    """Boost speed |beta| >= 1."""


class OffShellMomentum(RelQubitError):
    """Four-momentum violating p.p = m^2 or p0 > 0."""


class DegenerateFrame(RelQubitError):
    """p . flagpole(nu) too small to build a spin frame at this momentum."""


class MasslessUnsupported(RelQubitError):
    """Operation defined only for massive momenta."""


class TopologicalObstruction(RelQubitError):
    """Massless momentum (anti)parallel to the frame generator's flagpole."""


class NotPND(RelQubitError):
    """Spinor is not an eigenspinor of the given SL(2,C) element."""


class ImaginaryLambda(RelQubitError):
    """(t.p)^2 < m^2 t.t: no real spin eigenvalue along this axis."""


class SingularAxis(RelQubitError):
    """Vanishing normalization bracket in the axis-change construction."""


class NotNormalized(RelQubitError):
    """Wave packet has zero or non-unit norm where unit norm is required."""


class NoSharedPND(RelQubitError):
    """Trajectory steps admit no common principal null direction."""
