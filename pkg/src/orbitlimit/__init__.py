"""Classical limits of quantum systems on coadjoint orbits of SU(M).

The package constructs highest-weight irreps of sl_M from wedge powers of
the defining representation, parametrizes the projective orbit of the
highest-weight state by a unipotent chart, and evaluates the symbol map
l(alpha) = r(alpha) N / N by exact jet calculus against the factorized norm
N = prod N_k^{lambda_k}.  Classical limits, momentum maps, Poisson-bracket
checks, and polynomial-structure fits in the weight sit on top; the cli
module exposes them as the `orbitlimit` command.
"""

from .algebra import (
    AlgebraSpec,
    Weight,
    commutator,
    dominant_weights,
    random_special_unitary,
    su_orthonormal_basis,
    weyl_dimension,
)
from .climit import (
    ConvergenceReport,
    MomentValue,
    PoissonCheck,
    Theorem3Report,
    cl_generator,
    cl_monomial,
    cl_operator,
    cl_sequence,
    default_theorem3_grid,
    dirac_check,
    equivariance_residual,
    l_symbol,
    l_symbol_flow,
    l_symbol_jet,
    l_weight_gradient,
    moment,
    moment_map,
    poisson_check,
    theorem3_structure,
)
from .irreps import (
    DIMENSION_CAP,
    DimensionCapExceeded,
    Irrep,
    build_irrep,
    cached_irrep,
    commutation_residual,
    group_apply,
    highest_weight_space_dimension,
    irrep_from_json,
    irrep_to_json,
    orbit_state,
    rep_apply,
    rep_of_matrix,
    unitarity_residual,
    weight_multiset,
)
from .jets import Jet
from .norms import (
    fundamental_norm,
    fundamental_norm_jet,
    jet_of_norm,
    norm_direct,
    norm_factorized,
)
from .operators import (
    AbstractOperator,
    format_operator,
    formal_adjoint,
    is_abstractly_selfadjoint,
    monomial_decomposition,
    operator_from_matrix_element,
    scalar_operator,
)
from .orbit import (
    DecompositionOnClosedSet,
    FirstOrderOp,
    OrbitPoint,
    active_pairs,
    apply_op,
    blocks_for_weight,
    conjugate_split,
    gauss_decompose,
    lower_pairs,
    r_tilde,
    sample_points,
)
from .parsing import ParseError, parse_hamiltonian
from .verify import CheckResult, SuiteResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "AbstractOperator",
    "AlgebraSpec",
    "CheckResult",
    "ConvergenceReport",
    "DIMENSION_CAP",
    "DecompositionOnClosedSet",
    "DimensionCapExceeded",
    "FirstOrderOp",
    "Irrep",
    "Jet",
    "MomentValue",
    "OrbitPoint",
    "ParseError",
    "PoissonCheck",
    "SuiteResult",
    "Theorem3Report",
    "Weight",
    "active_pairs",
    "apply_op",
    "blocks_for_weight",
    "build_irrep",
    "cached_irrep",
    "cl_generator",
    "cl_monomial",
    "cl_operator",
    "cl_sequence",
    "commutation_residual",
    "commutator",
    "conjugate_split",
    "default_theorem3_grid",
    "dirac_check",
    "dominant_weights",
    "equivariance_residual",
    "formal_adjoint",
    "format_operator",
    "fundamental_norm",
    "fundamental_norm_jet",
    "gauss_decompose",
    "group_apply",
    "highest_weight_space_dimension",
    "irrep_from_json",
    "irrep_to_json",
    "is_abstractly_selfadjoint",
    "jet_of_norm",
    "l_symbol",
    "l_symbol_flow",
    "l_symbol_jet",
    "l_weight_gradient",
    "lower_pairs",
    "moment",
    "moment_map",
    "monomial_decomposition",
    "norm_direct",
    "norm_factorized",
    "operator_from_matrix_element",
    "orbit_state",
    "parse_hamiltonian",
    "poisson_check",
    "r_tilde",
    "random_special_unitary",
    "rep_apply",
    "rep_of_matrix",
    "run_suite",
    "sample_points",
    "scalar_operator",
    "su_orthonormal_basis",
    "theorem3_structure",
    "unitarity_residual",
    "weight_multiset",
    "weyl_dimension",
]
