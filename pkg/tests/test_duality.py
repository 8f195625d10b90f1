from fractions import Fraction

import pytest

from src.duality import (
    FactoredAlgebra,
    LatticeFn,
    H,
    P,
    Q,
    bialgebra_compatibility,
    cartan_relations,
    character,
    check_multiplicative,
    check_phi,
    commutator,
    coproduct_formulas,
    counit,
    derive_coefficients,
    distant_relations,
    evaluate_UT_fundamental,
    expected_factorial,
    factorial_pairings,
    faulhaber,
    fundamental_rep,
    matrix_coproduct_mismatches,
    pair,
    pq_relations,
    pq_rhs,
    q_readings,
    qgroup_generators,
    simple_P,
    simple_Q,
    sl_residual,
    universal_R_report,
    ut_pairs,
    verify_coproducts,
)
from src.ncalg import NCPoly, k_pair, k_simple
from src.ring import ParamSpace, Ratio
from src.tensor import Mat
from src.utils.errors import DegreeOverflowError

S2 = ParamSpace(2)
S3 = ParamSpace(3)


def R(space, x):
    return Ratio.of(space, x)


def word(alg, *names):
    alpha = alg.alphabet
    return NCPoly.word(alg.space, alpha, tuple(alpha.index(x) for x in names))


@pytest.fixture(scope="module")
def alg2():
    return FactoredAlgebra(S2, 4)


@pytest.fixture(scope="module")
def alg2_small():
    return FactoredAlgebra(S2, 2)


# -------------------- Lattice Function Tests --------------------
def test_faulhaber_low_powers():
    assert faulhaber(0) == (0, 1)
    assert faulhaber(1) == (0, Fraction(-1, 2), Fraction(1, 2))


def test_partial_sum_of_polynomial():
    t = LatticeFn.coordinate(S2, 1, 0)
    assert t.partial_sum().evaluate((4,)) == R(S2, 6)
    assert (t * t).partial_sum().evaluate((3,)) == R(S2, 5)


def test_partial_sum_of_character():
    a = R(S2, S2.a)
    geo = LatticeFn.character(S2, (a,)).partial_sum()
    assert geo.evaluate((3,)) == 1 + a + a * a
    assert geo.evaluate((0,)).is_zero()


def test_character_negative_exponent():
    a = R(S2, S2.a)
    assert LatticeFn.character(S2, (a,)).evaluate((-2,)) == (a * a).inverse()


def test_affine_and_block_sum():
    m = LatticeFn.coordinate(S2, 1, 0)
    assert m.affine((2,), 3).evaluate((1,)) == R(S2, 5)
    h = LatticeFn.coordinate(S2, 2, 0)
    assert h.block_sum().evaluate((1, 0, 2, 0)) == R(S2, 3)


def test_tensor_separates_variables():
    a = R(S2, S2.a)
    f = LatticeFn.character(S2, (a, 1))
    g = LatticeFn.coordinate(S2, 2, 1)
    assert f.tensor(g).evaluate((2, 5, 0, 3)) == a * a * 3


# -------------------- Pairing Tests --------------------
def test_dual_basis_degree_one(alg2):
    P21 = P(alg2, 2, 1)
    assert pair(P21, word(alg2, "X2^1")) == R(S2, 1)
    assert pair(P21, word(alg2, "X2^1", "z1")) == R(S2, 1)
    assert pair(Q(alg2, 1, 2), word(alg2, "z2", "Y1^2")) == R(S2, 1)
    assert pair(P21, word(alg2, "z1")).is_zero()


@pytest.mark.parametrize("m", [-2, -1, 0, 3])
def test_H_reads_lattice_coordinate(alg2, m):
    letter = "z1" if m >= 0 else "z1^-1"
    assert pair(H(alg2, 1), word(alg2, *[letter] * abs(m))) == R(S2, m)
    assert pair(H(alg2, 2), word(alg2, *[letter] * abs(m))).is_zero()


def test_character_pairing(alg2):
    c1, c2 = R(S2, S2.q(1, 2)), R(S2, S2.a)
    K = character(alg2, (c1, c2))
    assert pair(K, word(alg2, "z1", "z1", "z2^-1")) == c1 * c1 / c2


def test_pairing_degree_overflow(alg2):
    with pytest.raises(DegreeOverflowError):
        pair(P(alg2, 2, 1), word(alg2, *["X2^1"] * 5))


def test_generator_names(alg2):
    assert set(qgroup_generators(alg2)) == {"P2^1", "Q1^2", "H1", "H2", "1"}


def test_generator_index_checks(alg2):
    with pytest.raises(ValueError):
        P(alg2, 1, 2)
    with pytest.raises(ValueError):
        Q(alg2, 2, 1)


# -------------------- Dual Product Tests --------------------
def test_square_pairs_to_q_two(alg2):
    P21 = P(alg2, 2, 1)
    a = R(S2, S2.a)
    assert pair(P21 * P21, word(alg2, "X2^1", "X2^1")) == 1 + a


@pytest.mark.parametrize("kind", ["P", "Q"])
def test_factorial_pairings(alg2, kind):
    table = factorial_pairings(alg2, 4, kind)
    for (n, m), v in table.items():
        if n == m:
            assert v == expected_factorial(S2, n, kind)
        else:
            assert v.is_zero()


def test_characters_multiply_pointwise(alg2):
    a, q = R(S2, S2.a), R(S2, S2.q(2, 1))
    K1, K2 = character(alg2, (a, q)), character(alg2, (q, q))
    assert K1 * K2 == character(alg2, (a * q, q * q))


def test_counit_is_unit(alg2):
    P21 = P(alg2, 2, 1)
    assert counit(alg2) * P21 == P21
    assert P21 * counit(alg2) == P21


def test_product_degree_overflow(alg2_small):
    P21 = P(alg2_small, 2, 1)
    with pytest.raises(DegreeOverflowError):
        P21 * P21 * P21


# -------------------- Quantum Group Relation Tests --------------------
def test_cartan_relations_n2(alg2):
    bad = [r.name for r in cartan_relations(alg2) if not r.holds]
    assert bad == []


def test_pq_relation_n2(alg2):
    assert all(r.holds for r in pq_relations(alg2))
    P1, Q1 = simple_P(alg2, 1), simple_Q(alg2, 1)
    assert commutator(P1, Q1) == pq_rhs(alg2, 1)


def test_pq_relation_wrong_scalar_fails(alg2):
    P1, Q1 = simple_P(alg2, 1), simple_Q(alg2, 1)
    res = commutator(P1, Q1) - pq_rhs(alg2, 1).scale(R(S2, S2.a))
    assert not res.is_zero()
    assert res.witness() is not None


def test_coproduct_formulas_n2():
    alg = FactoredAlgebra(S2, 3)
    bad = [(r.name, r.witness()) for r in coproduct_formulas(alg) if not r.holds]
    assert bad == []


def test_bialgebra_compatibility_n2():
    alg = FactoredAlgebra(S2, 3)
    rels = bialgebra_compatibility(alg)
    assert len(rels) == 16
    assert {"D(H2Q1)", "D(Q1Q1)", "D(H1H2)", "D(P1Q1)"} <= {r.name for r in rels}
    bad = [(r.name, r.witness()) for r in rels if not r.holds]
    assert bad == []


def test_verify_coproducts_labels():
    alg = FactoredAlgebra(S2, 3)
    labels = {r.label for r in verify_coproducts(alg, [("P1", "Q1")])}
    assert labels == {"coproduct", "bialgebra"}


@pytest.mark.slow
def test_pq_relations_n3():
    alg = FactoredAlgebra(S3, 4)
    assert all(r.holds for r in pq_relations(alg))


@pytest.mark.slow
def test_serre_coefficients_n3():
    alg = FactoredAlgebra(S3, 4)
    a = R(S3, S3.a)
    k2 = R(S3, k_simple(S3, 2))
    p_side, q_side = derive_coefficients(alg)
    assert p_side.kind == "P" and q_side.kind == "Q"
    assert p_side.k_root == a * k2
    assert p_side.r == k2.inverse()
    assert p_side.s == k2
    assert p_side.r_literal == (a * k2).inverse()
    assert p_side.s_literal is not None
    assert p_side.r_wrong_k is None
    assert q_side.solved


@pytest.mark.slow
def test_q_readings_n3():
    readings = q_readings(FactoredAlgebra(S3, 4))
    assert readings.adjacent_k == (None,)
    assert not readings.adjacent_holds
    assert readings.distant_holds


@pytest.mark.slow
def test_distant_relations_n4():
    S4 = ParamSpace(4)
    alg = FactoredAlgebra(S4, 2)
    rels = distant_relations(alg)
    assert [r.name for r in rels] == ["[P1,P3]_k31", "[Q3,Q1]_k31"]
    assert all(r.holds for r in rels)
    P1, P3 = simple_P(alg, 1), simple_P(alg, 3)
    assert not commutator(P1, P3, R(S4, k_pair(S4, 3, 1)) * R(S4, S4.a)).is_zero()


# -------------------- Fundamental Representation Tests --------------------
def test_fundamental_rep_generators(alg2_small):
    assert fundamental_rep(P(alg2_small, 2, 1)) == Mat.unit(S2, 2, 1)
    assert fundamental_rep(Q(alg2_small, 1, 2)) == Mat.unit(S2, 1, 2)
    for k in (1, 2):
        assert fundamental_rep(H(alg2_small, k)) == Mat.unit(S2, k, k)


def test_fundamental_rep_character(alg2_small):
    c = (R(S2, S2.a), R(S2, S2.q(1, 2)))
    expected = Mat.unit(S2, 1, 1).scale(c[0]) + Mat.unit(S2, 2, 2).scale(c[1])
    assert fundamental_rep(character(alg2_small, c)) == expected


def test_rep_multiplicative_n2(alg2_small):
    assert check_multiplicative(alg2_small) == []


def test_phi_maps_n2(alg2_small):
    report = check_phi(alg2_small)
    assert report.lattice_matches
    assert report.x_matches
    assert report.lattice_prime_matches
    assert report.y_ratio == R(S2, S2.a)
    assert report.homomorphisms


def test_universal_R_n2(alg2_small):
    report = universal_R_report(alg2_small)
    assert report.convention == "P-first"
    assert report.residual.is_zero()


def test_sl_projection_n2(alg2_small):
    assert sl_residual(alg2_small).is_zero()


def test_UT_telescopes_n2(alg2_small):
    ut = evaluate_UT_fundamental(alg2_small)
    assert ut.mismatches == ()
    pres = alg2_small.pres
    expected = pres.nf(word(alg2_small, "X2^1", "z1", "Y1^2") + word(alg2_small, "z2"))
    assert ut.product.entries[1, 1] == expected


def test_UT_coproduct_is_matrix_coproduct(alg2_small):
    ut = evaluate_UT_fundamental(alg2_small)
    assert ut.coproduct_mismatches == ()
    scaled = ut.product.copy()
    scaled.entries[0, 1] = scaled.entries[0, 1].scale(R(S2, 2))
    assert (1, 2) in matrix_coproduct_mismatches(alg2_small, scaled)


def test_ut_pairs_resolve_identity(alg2_small):
    ut = ut_pairs(alg2_small)
    alpha = alg2_small.alphabet
    for key, dual in ut.pairs:
        xw, yw = key
        assert pair(dual, NCPoly.word(S2, alpha, xw + yw)) == R(S2, 1)


@pytest.mark.slow
def test_phi_and_universal_R_n3():
    alg = FactoredAlgebra(S3, 4)
    report = check_phi(alg)
    assert report.lattice_matches and report.x_matches
    assert report.y_ratio == R(S3, S3.a)
    assert universal_R_report(alg).convention == "P-first"


@pytest.mark.slow
def test_sl_projection_n3():
    assert sl_residual(FactoredAlgebra(S3, 4)).is_zero()
