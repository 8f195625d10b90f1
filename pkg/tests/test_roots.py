import pytest

from src.duality import classical_degeneration, pair, root_extension
from src.ncalg import NCPoly
from src.ring import CycScalar, ParamSpace, Ratio, q_factorial, to_cyc
from src.utils.errors import ConfigError

S2 = ParamSpace(2)


def R(space, x):
    return Ratio.of(space, x)


def x_power(alg, m):
    alpha = alg.alphabet
    return NCPoly.word(alg.space, alpha, (alpha.index("X2^1"),) * m)


@pytest.fixture(scope="module")
def order2():
    return root_extension(S2, 2)


# -------------------- Root Extension Tests --------------------
def test_order2_structure(order2):
    assert order2.degree == 5
    assert order2.qint_vanishes
    assert order2.recursion_failures == ()
    assert order2.pole_free
    assert order2.power_vanishes


def test_order2_relations(order2):
    assert [r.name for r in order2.relations] == ["[H1,P']", "[H1,Q']", "[H2,P']", "[H2,Q']"]
    bad = [(r.name, r.witness()) for r in order2.relations if not r.holds]
    assert bad == []


def test_order2_prime_pairings(order2):
    alg = order2.p_prime.algebra
    assert to_cyc(pair(order2.p_prime, x_power(alg, 2)), 2) == CycScalar.const(S2, 2, 1)
    assert pair(order2.p_prime, x_power(alg, 1)).is_zero()
    assert pair(order2.p_prime, x_power(alg, 3)).is_zero()


def test_order2_pq_coefficient(order2):
    a = R(S2, S2.a)
    assert order2.pq_coefficient == a * a / (1 - a)
    assert order2.pq_at_root == to_cyc((1 - a).inverse(), 2)
    assert order2.stated_at_root == to_cyc(a - 1, 2)
    assert not order2.pq_matches_stated


@pytest.mark.slow
def test_order3_extension():
    report = root_extension(S2, 3)
    a = R(S2, S2.a)
    assert report.degree == 7
    assert report.pole_free and report.power_vanishes
    assert all(r.holds for r in report.relations)
    assert report.pq_coefficient == a ** 3 / (1 - a)
    alg = report.p_prime.algebra
    prime = pair(report.p_prime, x_power(alg, 3))
    assert prime == R(S2, q_factorial(2, S2))


def test_root_extension_needs_gl2():
    with pytest.raises(ConfigError):
        root_extension(ParamSpace(3), 2)


def test_root_extension_degree_too_small():
    with pytest.raises(ConfigError):
        root_extension(S2, 3, degree=3)


def test_plain_power_vanishes_at_root(order2):
    # P^2 pairs with X^2 to [2]_a, zero at a = -1
    alg = order2.p_prime.algebra
    square = pair(order2.p_prime.scale(R(S2, 1 + S2.a)), x_power(alg, 2))
    assert to_cyc(square, 2).is_zero()


# -------------------- Classical Degeneration Tests --------------------
def test_classical_degeneration():
    report = classical_degeneration(S2)
    assert report.recursion_failures == ()
    assert report.pairings == {1: 1, 2: 2, 3: 6, 4: 24}
    assert report.r_identity
    assert report.holds
