from .alphabet import Alphabet, Letter, coordinate_alphabet, factored_alphabet, matrix_alphabet
from .poly import NCPoly, word_key
from .rewrite import Ambiguity, RewriteSystem
from .presets import (
    Presentation,
    factored_relations,
    minus_relation,
    plus_relation,
    preset_calculus,
    preset_factored,
    preset_pseudogroup,
    preset_quantum_plane,
    preset_theta,
    quad_to_poly,
    serre_relations,
    x_commutation,
    y_commutation,
)
from .coproduct import (
    BAReport,
    check_BA_relation,
    check_coassociativity,
    check_coproduct_homomorphism,
    check_power_expansion,
    coproduct,
    leg_system,
)
from .factorization import (
    SimpleRelation,
    certify_serre,
    derived_simple_relations,
    factorization_images,
    k_pair,
    k_simple,
    quommutator,
    serre_coefficients,
    solve_quommutator,
    substitute_factorization,
)
from .checks import BraidEquivalence, check_calP_conjugation, verify_braid_equivalence
