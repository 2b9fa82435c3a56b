"""Qubit channel analysis toolkit.

Represents quantum maps as superoperators, Choi (dynamical) matrices and
signed Kraus sets; classifies them as CP or NCP from the Choi spectrum;
probes positivity domains over the Bloch ball; and estimates volume
measures of map families by seeded, shard-mergeable Monte Carlo.
"""

from .channels import (
    CPVerdict,
    DivergentMap,
    NotUnitary,
    ProbeConfig,
    SignedKrausSet,
    SingularMap,
    ValidityVerdict,
    apply,
    check_validity,
    choi_from_superop,
    classify,
    document_to_superop,
    kraus_from_choi,
    map_to_document,
    output_spectrum_unital,
    superop_from_choi,
    unital_choi,
)
from .domain import (
    DomainReport,
    GridSpec,
    MonteCarloSpec,
    detect_fixed_lines,
    export_domain,
    read_domain_csv,
    scan_domain,
)
from .families import (
    CnotIntermediate,
    ControlledUnitaryFamily,
    DephasingModel,
    OutOfCube,
    OutOfRange,
    RateSingularity,
    bncp_example,
    cnot_first_map,
    cnot_intermediate_map,
    controlled_q_first_map,
    controlled_q_intermediate_map,
    controlled_q_singular_locus,
    dephasing_beta,
    dephasing_intermediate,
    dephasing_map,
    dephasing_rate,
    fixed_point_line,
    pauli_choi,
    q_unitary,
    rotated_pauli_choi,
)
from .matops import (
    EigenDecomp,
    NotHermitian,
    SingularMatrix,
    eig_hermitian,
    eigvals_hermitian,
    hermitian,
    inverse4,
    kron,
    partial_trace,
    reshuffle,
)
from .measure import (
    CPBoundednessReport,
    DivergenceScan,
    MeasureEstimate,
    boundedness_check_cp,
    divergence_scan,
    estimate_pauli_measure,
    estimate_rotated_measure,
    lattice_cp_fraction,
)
from .states import bloch_to_state, in_ball, is_physical, sample_ball, state_to_bloch

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
