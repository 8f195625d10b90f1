from .params import ParamSpace
from .scalar import Scalar, Ratio
from .cyclotomic import CycScalar, RootOfUnity, cyclotomic_coeffs, substitute, to_cyc
from .qnumbers import (
    GexpTerm,
    gexp_scheme,
    q_binomial,
    q_factorial,
    q_int,
    qexp_coeffs,
    verify_gexp_recursion,
)
