"""geamkit: generalized equiangular measurements for finite-dimensional systems.

Construction of informationally overcomplete POVMs from weighted
symmetric measurement families, verification of their defining trace
relations, conical 2-design certification, and dual-frame state
tomography. All values are immutable after construction and all
operations are pure functions, so the library is safe to use from
multiple threads.
"""

from . import errors
from .bases import (
    BasisPartition,
    OperatorBasis,
    gell_mann_basis,
    partition_basis,
    simplex_vectors,
)
from .config import DEFAULT_TOL
from .designs import (
    DesignCertificate,
    PhiMapReport,
    conical_check_direct,
    kappas_closed_form,
    frame_operator_check,
)
from .geam import (
    GEAM,
    CompletenessReport,
    GeamReport,
    square_ratio_range,
    completeness_rank,
    constant_difference_family,
    equal_overlap_family,
    equal_trace_weights,
    extract_parameters,
    mub_geam,
    rescale_to_geam,
    verify_geam,
)
from .gsm import (
    GSMFamily,
    SymmetryReport,
    build_gsm,
    gsm_dual_frame,
    max_mixing_parameter,
    mixing_for_overlap_ratio,
    mixing_for_square_trace,
    verify_gsm,
)
from .operators import (
    density_operator,
    eigenvalues_hermitian,
    flip_operator,
    gram_rank,
    hermitian_operator,
    hs_inner,
    random_density,
    trace_distance,
)
from .tomography import (
    IocBounds,
    ProbabilityTable,
    born_probabilities,
    geam_dual_frame,
    index_of_coincidence,
    ioc_closed_form,
    purity_from_probabilities,
    reconstruct_state,
    sample_measurements,
)

__version__ = "0.1.0"

__all__ = [
    "BasisPartition",
    "CompletenessReport",
    "DEFAULT_TOL",
    "DesignCertificate",
    "GEAM",
    "GSMFamily",
    "GeamReport",
    "IocBounds",
    "OperatorBasis",
    "PhiMapReport",
    "ProbabilityTable",
    "SymmetryReport",
    "square_ratio_range",
    "born_probabilities",
    "build_gsm",
    "completeness_rank",
    "conical_check_direct",
    "constant_difference_family",
    "density_operator",
    "eigenvalues_hermitian",
    "equal_overlap_family",
    "equal_trace_weights",
    "errors",
    "extract_parameters",
    "flip_operator",
    "geam_dual_frame",
    "gell_mann_basis",
    "gram_rank",
    "gsm_dual_frame",
    "hermitian_operator",
    "hs_inner",
    "index_of_coincidence",
    "ioc_closed_form",
    "kappas_closed_form",
    "max_mixing_parameter",
    "mixing_for_overlap_ratio",
    "mixing_for_square_trace",
    "mub_geam",
    "partition_basis",
    "frame_operator_check",
    "purity_from_probabilities",
    "random_density",
    "reconstruct_state",
    "rescale_to_geam",
    "sample_measurements",
    "simplex_vectors",
    "trace_distance",
    "verify_geam",
    "verify_gsm",
]
