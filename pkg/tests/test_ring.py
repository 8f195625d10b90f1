import random
from fractions import Fraction

import pytest

from src.ring import (
    CycScalar,
    ParamSpace,
    Ratio,
    RootOfUnity,
    gexp_scheme,
    q_binomial,
    q_factorial,
    q_int,
    qexp_coeffs,
    substitute,
    to_cyc,
    verify_gexp_recursion,
)
from src.utils.errors import PoleError, ZeroDenominatorError

SPACE = ParamSpace(2)
A = SPACE.a
Q12 = SPACE.q(1, 2)


def R(x):
    return Ratio.of(SPACE, x)


# -------------------- Scalar / Ratio Tests --------------------
def test_inverse_pair_cancels():
    assert Q12 * SPACE.q(2, 1) == 1


def test_self_cancellation():
    assert Ratio(A - 1, A - 1) == 1


def test_additive_inverse():
    assert ((1 - A) + (A - 1)).is_zero()


def test_q_ji_is_inverse_monomial():
    assert SPACE.q(2, 1) == Q12.inverse_monomial()
    assert SPACE.q(1, 1) == 1


def test_ratio_canonical_form_is_unique():
    x = Ratio(A * A - 1, A - 1)
    assert x == R(A + 1)
    y = Ratio(Q12 * (A - 1), Q12 * Q12 * (1 - A * A))
    assert y.den == A + 1
    assert y == Ratio(-Q12.inverse_monomial(), A + 1)


def test_ratio_monomial_denominator_folds():
    x = Ratio(A + 1, A * Q12)
    assert x.is_laurent()
    assert x.num == SPACE.q(2, 1) + A.inverse_monomial() * SPACE.q(2, 1)


def test_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        Ratio(A, SPACE.zero())
    with pytest.raises(ZeroDenominatorError):
        R(0).inverse()


def _random_ratio(rng):
    def poly():
        out = SPACE.zero()
        for _ in range(rng.randint(1, 3)):
            out = out + rng.randint(-3, 3) * (A ** rng.randint(-1, 2)) * (Q12 ** rng.randint(-1, 1))
        return out
    den = poly()
    while den.is_zero():
        den = poly()
    return Ratio(poly(), den)


def test_field_axioms_on_random_triples():
    rng = random.Random(7)
    for _ in range(12):
        x, y, z = (_random_ratio(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert (x - x).is_zero()
        if not x.is_zero():
            assert x * x.inverse() == 1


def test_string_round_trip():
    x = Ratio(1 - A, A + Q12)
    assert Ratio.from_string(SPACE, str(x)) == x
    assert str(Ratio.of(SPACE, 1 - A)) == "(1-a)/(1)"


def test_fractional_exponents_stay_on_lattice():
    half = SPACE.monomial({"a": Fraction(1, 2)})
    assert half * half == A
    with pytest.raises(ValueError):
        SPACE.monomial({"a": Fraction(1, 3)})


# -------------------- q-number Tests --------------------
def test_q_int_values():
    assert q_int(0, SPACE).is_zero()
    assert q_int(4, SPACE) == 1 + A + A ** 2 + A ** 3
    assert substitute(q_int(3, SPACE), {"a": 2}) == 7
    with pytest.raises(ValueError):
        q_int(-1, SPACE)


def test_q_int_addition_rule():
    for m in range(9):
        for n in range(9):
            assert q_int(m + n, SPACE) == q_int(m, SPACE) + A ** m * q_int(n, SPACE)


def test_q_factorial():
    assert q_factorial(0, SPACE) == 1
    assert q_factorial(3, SPACE) == (1 + A) * (1 + A + A ** 2)


def test_q_binomial_pascal_rows():
    assert q_binomial(4, 2, SPACE) == 1 + A + 2 * A ** 2 + A ** 3 + A ** 4
    assert Ratio.of(SPACE, q_binomial(5, 2, SPACE)) == Ratio(q_factorial(5, SPACE), q_factorial(2, SPACE) * q_factorial(3, SPACE))


def test_qexp_coeffs():
    coeffs = qexp_coeffs(2, SPACE)
    assert coeffs[0] == 1 and coeffs[1] == 1
    assert coeffs[2] == Ratio(SPACE.one(), 1 + A)
    inv = qexp_coeffs(2, SPACE, flavor="1/a")
    assert inv[2] == Ratio(A, A + 1)


# -------------------- Root of Unity Tests --------------------
def test_inverse_of_one_minus_zeta():
    x = substitute(Ratio(SPACE.one(), 1 - A), {"a": RootOfUnity(3)})
    assert isinstance(x, CycScalar)
    assert x * (1 - CycScalar.zeta(SPACE, 3)) == 1


def test_pole_at_root():
    with pytest.raises(PoleError):
        substitute(Ratio(SPACE.one(), q_int(3, SPACE)), {"a": RootOfUnity(3)})


@pytest.mark.parametrize("K", [2, 3, 4, 5, 6])
def test_q_integers_at_roots(K):
    for n in range(1, K):
        assert not to_cyc(q_int(n, SPACE), K).is_zero()
    assert to_cyc(q_int(K, SPACE), K).is_zero()


def test_gexp_scheme_terms():
    t = gexp_scheme(2, 3, SPACE)[3]
    assert (t.m, t.n) == (1, 1) and t.coefficient == 1
    t = gexp_scheme(3, 2, SPACE)[2]
    assert (t.m, t.n) == (0, 2)
    assert t.coefficient * to_cyc(1 + A, 3) == 1
    assert gexp_scheme(4, 0, SPACE)[0].coefficient == 1


def test_gexp_matches_qexp_below_K():
    generic = qexp_coeffs(3, SPACE)
    for term in gexp_scheme(5, 3, SPACE):
        assert term.m == 0
        assert term.coefficient == to_cyc(generic[term.k], 5)


@pytest.mark.parametrize("K", [2, 3])
def test_gexp_recursion_at_roots(K):
    assert verify_gexp_recursion(SPACE, 2 * K + 2, K=K) == []


def test_gexp_recursion_generic_and_classical():
    assert verify_gexp_recursion(SPACE, 6) == []
    assert verify_gexp_recursion(SPACE, 6, classical=True) == []


def test_numeric_substitution_with_roots():
    x = SPACE.monomial({"q12": Fraction(1, 2)})
    assert substitute(x, {"q12": Fraction(9, 4), "a": 1}) == Fraction(3, 2)
    partial = substitute(Ratio(A + Q12, A), {"q12": 2})
    assert partial == Ratio(A + 2, A)


def test_degree_in():
    x = A * A * Q12 + A
    assert x.degree_in("a") == 2
    assert x.degree_in("q12") == 1
