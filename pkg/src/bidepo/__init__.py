"""Bipartite depolarizing maps: construction, classification, verification."""

from .tensor_core import (
    Dims,
    DimensionMismatchError,
    ResourceLimitError,
    herm_spectrum,
    kron,
    max_entangled,
    partial_trace,
    partial_transpose,
    permute_systems,
    random_pure,
    schmidt,
)
from .map_family import (
    ChiParams,
    DepolParams,
    PhiParams,
    SuperOp,
    chi_apply,
    compose_local,
    depolarizing,
    hadamard_channel,
    local_product_as_phi,
    phi_apply,
    phi_choi,
    phi_choi_spectrum,
    choi_pt_spectrum,
)
from .analytic_classify import (
    ClassificationReport,
    chi_positive,
    classify,
    classify_depolarizing,
    classify_global_depolarizing,
    classify_grid,
    classify_local_product,
    global_ea_threshold,
    phi_cocp,
    phi_cp,
    phi_ea,
    phi_eb,
    phi_positive,
    symmetric_ea_interval,
)
from .special_states import (
    SeparableCertificate,
    ea_decomposition,
    flag_plus_eps,
    isotropic_twirl,
    ppt_entangled_state,
    vertex_certificate,
)
from .hadamard_tools import (
    VandermondeSpec,
    cocp_hadamard_product,
    locc_hadamard,
    schmidt_rank,
    vandermonde_states,
)
from .numeric_oracle import (
    OracleVerdict,
    oracle_cocp,
    oracle_cp,
    oracle_ea_small,
    oracle_eb,
    oracle_positive,
    oracle_ppt_inducing,
    simplex_fmax,
    witness_detect,
)

__version__ = "0.1.0"
