from fractions import Fraction

import pytest

from src.ring import ParamSpace, Ratio, substitute
from src.rmatrix import (
    RFamily,
    build_calP,
    build_P,
    build_R,
    build_Rinv,
    check_block_spectrum,
    check_braid,
    check_constraint,
    check_cubic,
    check_hat_fixed,
    check_hecke,
    check_inverse,
    check_kappa_product,
    check_rescaling,
    check_ybe,
    corrupted_R,
    cyclic_P,
    esoteric_gl3,
    explicit_pi,
    kernel_violations,
    rep_pi,
    rep_pi_prime,
    sl_reduce,
    verify_rep,
)
from src.tensor import Mat

S2 = ParamSpace(2)
S3 = ParamSpace(3)


# -------------------- R / P Tests --------------------
def test_build_R_entries_n2():
    R = build_R(S2)
    a = S2.a
    assert R.nonzero_count() == 5
    assert R[(1, 1), (1, 1)] == 1
    assert R[(2, 2), (2, 2)] == 1
    assert R[(2, 1), (2, 1)] == S2.q(2, 1)
    assert R[(1, 2), (1, 2)] == a * S2.q(1, 2)
    assert R[(2, 1), (1, 2)] == 1 - a


def test_build_R_entry_count_n3():
    assert build_R(S3).nonzero_count() == 15


def test_classical_R_is_identity():
    R = build_R(S2)
    point = {"a": 1, "q12": 1}
    for r in range(4):
        for c in range(4):
            assert substitute(R.entries[r, c], point) == (1 if r == c else 0)


def test_P_is_R_with_swapped_lower_indices():
    R = build_R(S2)
    P = build_P(R)
    for row in P.multi_indices():
        for col in P.multi_indices():
            assert P[row, col] == R[(row[1], row[0]), col]


@pytest.mark.parametrize("n", [2, 3])
def test_matrix_identities(n):
    space = ParamSpace(n)
    fam = RFamily.build(space)
    assert check_hecke(fam.P).is_zero()
    assert check_braid(fam.P).is_zero()
    assert check_ybe(fam.R).is_zero()
    assert check_inverse(fam.R, fam.Rinv).is_zero()


@pytest.mark.slow
def test_matrix_identities_n4():
    fam = RFamily.build(ParamSpace(4))
    assert check_hecke(fam.P).is_zero()
    assert check_braid(fam.P).is_zero()
    assert check_ybe(fam.R).is_zero()
    assert check_inverse(fam.R, fam.Rinv).is_zero()


def test_inverse_formula_matches_exact_inverse():
    R = build_R(S2)
    assert R.inverse() == build_Rinv(S2)


def test_closed_form_P_inverse():
    fam = RFamily.build(S2)
    assert fam.P @ fam.Pinv() == Mat.identity(S2, 2)


def test_corrupted_hecke_fails():
    P = build_P(corrupted_R(S2))
    assert not check_hecke(P).is_zero()


def test_block_spectrum():
    for n in (2, 3):
        assert check_block_spectrum(build_P(build_R(ParamSpace(n)))) == []


# -------------------- calP Tests --------------------
def test_calP_cubic_n2():
    fam = RFamily.build(S2)
    calP = build_calP(fam.P, fam.Pinv())
    assert calP.legs == 4
    assert check_cubic(calP).is_zero()


def test_calP_is_not_hecke():
    fam = RFamily.build(S2)
    calP = build_calP(fam.P, fam.Pinv())
    assert not check_hecke(calP).is_zero()


@pytest.mark.slow
def test_calP_cubic_n3():
    fam = RFamily.build(S3)
    assert check_cubic(build_calP(fam.P, fam.Pinv())).is_zero()


# -------------------- Cyclic Control Tests --------------------
def test_cyclic_P_is_hecke_but_not_braid():
    P = cyclic_P(S3)
    assert check_hecke(P).is_zero()
    assert check_block_spectrum(P) == []
    assert not check_braid(P).is_zero()


def test_cyclic_P_needs_three():
    with pytest.raises(ValueError):
        cyclic_P(S2)


# -------------------- Representation Tests --------------------
@pytest.mark.parametrize("n", [2, 3])
def test_pi_and_pi_prime_satisfy_relations(n):
    space = ParamSpace(n)
    assert verify_rep(rep_pi(space), space) == []
    assert verify_rep(rep_pi_prime(space), space) == []


@pytest.mark.parametrize("n", [2, 3])
def test_kernels(n):
    space = ParamSpace(n)
    assert kernel_violations(rep_pi(space), upper=True) == []
    assert kernel_violations(rep_pi_prime(space), upper=False) == []
    assert kernel_violations(rep_pi(space), upper=False) != []


@pytest.mark.parametrize("n", [2, 3])
def test_closed_form_images(n):
    space = ParamSpace(n)
    for prime, rep in ((False, rep_pi(space)), (True, rep_pi_prime(space))):
        closed = explicit_pi(space, prime=prime)
        for key, M in rep.items():
            assert M == closed[key], key


def test_pi_lower_generator_n2():
    M = rep_pi(S2)[(2, 1)]
    assert M == Mat.unit(S2, 1, 2).scale(Ratio.of(S2, 1 - S2.a))


# -------------------- sl Reduction Tests --------------------
@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_constraint(n):
    red = sl_reduce(ParamSpace(n))
    assert check_constraint(red) == []
    assert check_kappa_product(red)
    assert check_hat_fixed(red) == []


@pytest.mark.parametrize("n", [2, 3])
def test_sl_rescaling(n):
    assert check_rescaling(sl_reduce(ParamSpace(n))).is_zero()


def test_sl_column_one_n2():
    red = sl_reduce(S2)
    prod = red.q_hat_fn(1, 1) * red.q_hat_fn(2, 1) * S2.a
    assert prod == S2.a ** Fraction(3, 2)


# -------------------- Esoteric gl(3) Tests --------------------
def test_esoteric_constrained():
    res = esoteric_gl3(S3, constrained=True)
    assert res.zeroth.is_zero()
    assert res.first.is_zero()


def test_esoteric_unconstrained_fails():
    res = esoteric_gl3(S3, constrained=False)
    assert res.zeroth.is_zero()
    assert not res.first.is_zero()


def test_esoteric_needs_gl3():
    with pytest.raises(ValueError):
        esoteric_gl3(S2, constrained=True)
