"""Universal N -> M qudit cloning machines, verified against brute-force oracles.

The package implements the optimal universal cloner in three equivalent
forms (projector, amplitude, entangled-pair), its 1 -> 2 asymmetric
variant, and closed-form expressions for every arbitrary-copy fidelity
F_L, all cross-checked against literal full-tensor-space constructions.
"""

from .combinatorics import (
    IdentityReport,
    OccupationVector,
    binomial,
    enumerate_occupations,
    splitting_coefficient,
    splitting_coefficient_sq,
    sym_dim,
    verify_identity,
)
from .hilbert import (
    ORACLE_CAP,
    FullDensity,
    FullState,
    GeneralizedPauli,
    OracleCapError,
    PureState,
    fidelity_pure,
    maximally_entangled,
    partial_trace,
    partial_trace_state,
    permute_factors,
    random_pure_state,
    random_unitary,
    tensor,
    trace_distance,
)
from .symmetric import (
    SymBasis,
    SymDensity,
    SymVector,
    embed_isometry,
    expand_power,
    full_to_sym_density,
    project_entangled_pairs,
    projector_full,
    reduce_symmetric,
    sym_to_full_density,
    sym_to_full_state,
    sym_unitary,
)
from .machines import (
    MACHINES,
    AsymmetricPairResult,
    AsymmetryWeights,
    CloneSpec,
    MachineOutput,
    PureJointExpansion,
    UnifiedOracleResult,
    WeightedCloneResult,
    asymmetric_1to2,
    explicit_1to2,
    fan_output,
    run_machine,
    unified_output,
    unified_output_oracle,
    unified_pure_output,
    weighted_clone,
    werner_output,
    werner_output_oracle,
)
from .fidelity import (
    FidelityReport,
    fidelity_L_closed,
    fidelity_L_closed_N1,
    fidelity_L_numeric,
    fidelity_global_closed,
    fidelity_single_closed,
    fidelity_table,
)

__version__ = "0.1.0"

__all__ = [
    "ORACLE_CAP",
    "MACHINES",
    "AsymmetricPairResult",
    "AsymmetryWeights",
    "CloneSpec",
    "FidelityReport",
    "FullDensity",
    "FullState",
    "GeneralizedPauli",
    "IdentityReport",
    "MachineOutput",
    "OccupationVector",
    "OracleCapError",
    "PureJointExpansion",
    "PureState",
    "SymBasis",
    "SymDensity",
    "SymVector",
    "UnifiedOracleResult",
    "WeightedCloneResult",
    "asymmetric_1to2",
    "binomial",
    "embed_isometry",
    "enumerate_occupations",
    "expand_power",
    "explicit_1to2",
    "fan_output",
    "fidelity_L_closed",
    "fidelity_L_closed_N1",
    "fidelity_L_numeric",
    "fidelity_global_closed",
    "fidelity_pure",
    "fidelity_single_closed",
    "fidelity_table",
    "full_to_sym_density",
    "maximally_entangled",
    "partial_trace",
    "partial_trace_state",
    "permute_factors",
    "project_entangled_pairs",
    "projector_full",
    "random_pure_state",
    "random_unitary",
    "reduce_symmetric",
    "run_machine",
    "splitting_coefficient",
    "splitting_coefficient_sq",
    "sym_dim",
    "sym_to_full_density",
    "sym_to_full_state",
    "sym_unitary",
    "tensor",
    "trace_distance",
    "unified_output",
    "unified_output_oracle",
    "unified_pure_output",
    "verify_identity",
    "weighted_clone",
    "werner_output",
    "werner_output_oracle",
    "__version__",
]
