import random

import pytest

from src.ncalg import (
    NCPoly,
    RewriteSystem,
    certify_serre,
    check_BA_relation,
    check_calP_conjugation,
    check_coassociativity,
    check_coproduct_homomorphism,
    check_power_expansion,
    coproduct,
    derived_simple_relations,
    factored_alphabet,
    k_simple,
    preset_calculus,
    preset_factored,
    preset_pseudogroup,
    preset_quantum_plane,
    preset_theta,
    serre_coefficients,
    substitute_factorization,
    verify_braid_equivalence,
)
from src.ring import ParamSpace, Ratio
from src.rmatrix import QuadRelation, RFamily, build_P, build_R, commutator_relations, cyclic_P, pseudogroup_relations
from src.utils.errors import RewriteBudgetError

S2 = ParamSpace(2)
S3 = ParamSpace(3)


def R(space, x):
    return Ratio.of(space, x)


# -------------------- Alphabet Tests --------------------
def test_factored_order_n3():
    alpha = factored_alphabet(3)
    names = [str(l) for l in alpha.letters]
    assert names[:3] == ["X2^1", "X3^1", "X3^2"]
    assert names[3:9] == ["z1", "z1^-1", "z2", "z2^-1", "z3", "z3^-1"]
    assert names[9:] == ["Y2^3", "Y1^3", "Y1^2"]


def test_heights():
    alpha = factored_alphabet(3)
    assert alpha[alpha.index("X3^1")].height == 2
    assert alpha[alpha.index("Y1^2")].height == 1
    assert alpha[alpha.index("z2")].height == 0


# -------------------- Rewriting Tests --------------------
def test_quantum_plane_relation_vanishes():
    plane = preset_quantum_plane(build_P(build_R(S2)))
    rel = plane.word("x1", "x2") - plane.word("x2", "x1").scale(S2.q(1, 2))
    assert plane.nf(rel).is_zero()


@pytest.mark.parametrize("n,d,dim", [(2, 2, 3), (2, 3, 4), (3, 2, 6), (3, 3, 10)])
def test_quantum_plane_dims(n, d, dim):
    plane = preset_quantum_plane(build_P(build_R(ParamSpace(n))))
    assert plane.system.graded_dim(d) == dim


@pytest.mark.parametrize("d,dim", [(1, 3), (2, 3), (3, 1), (4, 0)])
def test_theta_dims(d, dim):
    theta = preset_theta(build_P(build_R(S3)))
    assert theta.system.graded_dim(d) == dim


def test_quantum_plane_confluent_n3():
    plane = preset_quantum_plane(build_P(build_R(S3)))
    assert plane.system.local_confluence(3) == []


def test_ordered_words_are_normal():
    plane = preset_quantum_plane(build_P(build_R(S2)))
    x1, x2 = plane.system.alphabet.index("x1"), plane.system.alphabet.index("x2")
    assert plane.system.is_normal((x1, x2))
    assert not plane.system.is_normal((x2, x1))


def test_calculus_rule_n2():
    calc = preset_calculus(build_P(build_R(S2)))
    lhs = calc.word("th1", "x1")
    assert calc.nf(lhs) == calc.word("x1", "th1").scale(R(S2, S2.a).inverse())


@pytest.mark.parametrize("n,dim", [(2, 10), (3, 45)])
def test_pseudogroup_dims(n, dim):
    assert preset_pseudogroup(ParamSpace(n)).system.graded_dim(2) == dim


def test_pseudogroup_same_row_rule():
    pg = preset_pseudogroup(S2)
    rel = pg.word("z1^1", "z1^2") - pg.word("z1^2", "z1^1").scale(S2.q(1, 2))
    assert pg.nf(rel).is_zero()


def test_pseudogroup_confluent_n2():
    assert preset_pseudogroup(S2).system.local_confluence(3) == []


def test_corrupted_cross_rule_breaks_confluence():
    rels = []
    for rel in pseudogroup_relations(S2):
        if rel.family == "cross":
            lead, swapped = list(rel.terms)
            terms = {lead: rel.terms[lead], swapped: rel.terms[swapped] * S2.a}
            rel = QuadRelation(rel.family, rel.indices, terms)
        rels.append(rel)
    assert preset_pseudogroup(S2, rels).system.local_confluence(3) != []


def test_explicit_and_commutator_relations_agree():
    explicit = preset_pseudogroup(S2).system.rules
    fam = RFamily.build(S2)
    assert preset_pseudogroup(S2, commutator_relations(fam.P)).system.rules == explicit


def test_normal_form_idempotent_and_congruence():
    pg = preset_pseudogroup(S2)
    rng = random.Random(7)
    letters = range(len(pg.alphabet))
    for _ in range(10):
        p = NCPoly.word(S2, pg.alphabet, tuple(rng.choice(letters) for _ in range(rng.randint(1, 2))))
        q = NCPoly.word(S2, pg.alphabet, tuple(rng.choice(letters) for _ in range(rng.randint(1, 2))))
        assert pg.nf(pg.nf(p)) == pg.nf(p)
        assert pg.nf(p * q) == pg.nf(pg.nf(p) * pg.nf(q))


def test_budget_guards_cycles():
    alpha = factored_alphabet(2, "minus")
    sys = RewriteSystem(S2, alpha, {
        (0,): NCPoly.word(S2, alpha, (1,)),
        (1,): NCPoly.word(S2, alpha, (0,)),
    }, budget=50)
    with pytest.raises(RewriteBudgetError):
        sys.nf_word((0,))


def test_dump_lists_rules():
    lines = preset_pseudogroup(S2).system.dump()
    assert len(lines) == 6
    assert all(" -> " in line for line in lines)


# -------------------- Factored Presentation Tests --------------------
@pytest.mark.parametrize("n", [2, 3])
def test_factorization_annihilates_relations(n):
    assert substitute_factorization(ParamSpace(n)) == []


def test_factorization_image_n2():
    from src.ncalg import factorization_images
    pres = preset_factored(S2)
    img = factorization_images(pres)[(2, 2)]
    assert img == pres.word("X2^1", "z1", "Y1^2") + pres.word("z2")


def test_lattice_commutes_past_X():
    pres = preset_factored(S2)
    assert pres.nf(pres.word("z1", "X2^1")) == pres.word("X2^1", "z1").scale(R(S2, S2.a).inverse())
    assert pres.nf(pres.word("z1", "z1^-1")) == pres.one()


def test_X_commutes_with_Y():
    pres = preset_factored(S2)
    assert pres.nf(pres.word("Y1^2", "X2^1")) == pres.word("X2^1", "Y1^2")


@pytest.mark.parametrize("sector", ["minus", "plus", "full"])
def test_factored_confluent_n3(sector):
    assert preset_factored(S3, sector).system.local_confluence(3) == []


def test_composite_rules_n3():
    rels = {r.name: r for r in derived_simple_relations(S3)}
    x, y = rels["X-composite"], rels["Y-composite"]
    a = R(S3, S3.a)
    assert x.holds_as_stated
    assert x.derived_coefficient == 1 - a.inverse()
    assert y.derived_k == x.stated_k * a
    assert y.derived_coefficient == 1 - a
    assert not y.holds_as_stated


def test_serre_coefficients_n3():
    minus = preset_factored(S3, "minus")
    k2 = R(S3, k_simple(S3, 2))
    a = R(S3, S3.a)
    r, s = serre_coefficients(minus, "X", 1)
    assert r == (a * k2).inverse()
    assert s == a * k2
    assert certify_serre(minus, {("X", 1): (r, s)}) == []
    assert certify_serre(minus, {("X", 1): (r * a, s)}) != []


# -------------------- Coproduct Tests --------------------
def test_pseudogroup_coproduct_entry():
    pg = preset_pseudogroup(S2)
    dz = coproduct(pg.gen("z1^2"), pg)
    dbl = pg.doubled.alphabet
    expected = NCPoly(S2, dbl, {
        (pg.alphabet.index("z1^1"), dbl.index("z1^2'")): 1,
        (pg.alphabet.index("z1^2"), dbl.index("z2^2'")): 1,
    })
    assert dz == expected


@pytest.mark.parametrize("n", [2, 3])
def test_pseudogroup_coproduct_is_homomorphism(n):
    assert check_coproduct_homomorphism(preset_pseudogroup(ParamSpace(n))) == []


def test_pseudogroup_coassociative():
    assert check_coassociativity(preset_pseudogroup(S2)) == []


@pytest.mark.parametrize("sector", ["minus", "plus"])
@pytest.mark.parametrize("n", [2, 3])
def test_sector_coproducts(sector, n):
    pres = preset_factored(ParamSpace(n), sector)
    assert check_coproduct_homomorphism(pres) == []
    assert check_coassociativity(pres) == []


def test_lattice_coproduct_grouplike():
    pres = preset_factored(S2, "minus")
    dbl = pres.doubled.alphabet
    assert coproduct(pres.gen("x1"), pres) == NCPoly.word(S2, dbl, (dbl.index("x1"), dbl.index("x1'")))


def test_BA_relation():
    rep = check_BA_relation(preset_factored(S2, "minus"))
    assert rep.ratio == R(S2, S2.a)
    assert not rep.literal_holds


def test_power_expansion_is_q_binomial():
    assert check_power_expansion(preset_factored(S2, "minus"), n_max=4) == []


# -------------------- Calculus Consistency Tests --------------------
def test_calP_conjugation_n2():
    fam = RFamily.build(S2)
    assert check_calP_conjugation(fam.P, fam.Pinv()) == []


def test_braid_equivalence_genuine():
    eq = verify_braid_equivalence(build_P(build_R(S2)))
    assert eq.braid_holds
    assert eq.overlaps == ()


def test_braid_equivalence_cyclic_control():
    eq = verify_braid_equivalence(cyclic_P(S3))
    assert not eq.braid_holds
    assert eq.overlaps != ()
    assert eq.consistent
