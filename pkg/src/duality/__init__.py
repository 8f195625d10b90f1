from .lattice import LatticeFn, faulhaber
from .algebra import FactoredAlgebra, GaussFactors
from .functional import (
    Functional,
    TensorFunctional,
    UTObject,
    H,
    P,
    Q,
    character,
    commutator,
    counit,
    dual_comul,
    dual_mul,
    pair,
    proportional,
    qgroup_generators,
    tensor_mul,
    ut_pairs,
)
from .relations import (
    QReadings,
    RelationResidual,
    SerreSolution,
    A_char,
    B_char,
    bialgebra_compatibility,
    cartan_relations,
    coproduct_formulas,
    derive_coefficients,
    distant_relations,
    pq_relations,
    pq_rhs,
    q_readings,
    simple_P,
    simple_Q,
    verify_coproducts,
    verify_relations,
)
from .representation import (
    PhiMaps,
    PhiReport,
    UTEvaluation,
    UniversalRReport,
    check_multiplicative,
    check_phi,
    evaluate_UT_fundamental,
    functional_image,
    matrix_coproduct_mismatches,
    fundamental_rep,
    phi_maps,
    sl_residual,
    universal_R_fundamental,
    universal_R_report,
)
from .roots import (
    ClassicalReport,
    RootReport,
    classical_degeneration,
    expected_factorial,
    factorial_pairings,
    root_extension,
)
