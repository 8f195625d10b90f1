from .rfamily import RFamily, build_P, build_R, build_Rinv, corrupted_R, cyclic_P
from .checks import (
    block_spectrum,
    build_calP,
    check_block_spectrum,
    check_braid,
    check_cubic,
    check_hecke,
    check_inverse,
    check_ybe,
)
from .relations import QuadRelation, commutator_relations, pseudogroup_relations, row_relations
from .reps import evaluate_relation, explicit_pi, kernel_violations, rep_pi, rep_pi_prime, verify_rep
from .sl import SlReduction, check_constraint, check_hat_fixed, check_kappa_product, check_rescaling, sl_reduce
from .esoteric import EpsMat, constrained_q, delta_R, esoteric_gl3
