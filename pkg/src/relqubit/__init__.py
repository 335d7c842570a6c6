"""Relativistic qubits on null quantization axes.

Spin observables are projections of the Pauli-Lubanski vector.  Qubits
referred to the invariant null axis of the receiver's motion pick up only
Doppler shifts and a momentum-independent phase, while helicity-defined
linear polarizations depolarize; the bb84 module turns that difference
into error rates.
"""
from .errors import (
    DegenerateFrame,
    ImaginaryLambda,
    InvalidMatrix,
    InvalidSL2C,
    InvalidSpinor,
    MasslessUnsupported,
    NoSharedPND,
    NotNormalized,
    NotPND,
    OffShellMomentum,
    RelQubitError,
    SingularAxis,
    SuperluminalBoost,
    TopologicalObstruction,
)
from .spinor import (
    EPS,
    NU_MINUS,
    NU_PLUS,
    MassShellMomentum,
    apply_lorentz,
    boost_z,
    boost_z_rapidity,
    eps_contract,
    flagpole,
    matrix_to_vector,
    minkowski_dot,
    momentum_from_spatial,
    null_rotation,
    raise_index,
    rotation_x,
    rotation_z,
    sl2c_inverse,
    sl2c_to_lorentz,
    validate_sl2c,
    vector_to_matrix,
    vector_to_matrix_upper,
)
from .frames import (
    SpinFrame,
    frame_equivariance_check,
    frame_normalization_residual,
    frame_reconstruction_residual,
    invariant_direction,
    make_spin_frame,
    orthogonal_spin_axis,
)
from .pnd import (
    PNDKind,
    PNDResult,
    eigen_residual,
    principal_null_directions,
    shared_pnd,
)
from .littlegroup import (
    WignerMatrix,
    cocycle_residual,
    pnd_phase,
    wigner_for_mass,
    wigner_matrix,
    wigner_matrix_massless,
)
from .observables import (
    AxisKind,
    BasisChange,
    QuantizationAxis,
    basis_change,
    bb84_change_matrix,
    lambda_scalar,
    omega_general,
    phase_aligned_distance,
    pl_projection_matrix,
)
from .wavepacket import (
    PhotonWavePacket,
    QubitWavePacket,
    amplitude_change,
    degree_of_polarization,
    make_gaussian_packet,
    make_gaussian_photon_packet,
    normalize,
    packet_from_json,
    packet_norm,
    packet_to_json,
    poincare_transform,
    product_form_residual,
    purity,
    rebase,
    reduced_density_matrix,
)
from .bb84 import (
    BB84Config,
    EncodingKind,
    EncodingScheme,
    PacketSpec,
    QberReport,
    Trajectory,
    TrajectoryKind,
    correction_rotation,
    expected_qber,
    run_bb84,
)

__version__ = "0.1.0"
