from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..ncalg import NCPoly
from ..ring import CycScalar, ParamSpace, Ratio, q_factorial, q_int, substitute, to_cyc, verify_gexp_recursion
from ..rmatrix import build_R
from ..utils import log
from ..utils.errors import ConfigError, PoleError
from .algebra import FactoredAlgebra
from .functional import Functional, H, P, Q, commutator, pair, proportional
from .relations import A_char, B_char, RelationResidual


def _power_word(algebra: FactoredAlgebra, kind: str, m: int) -> NCPoly:
    alpha = algebra.alphabet
    p = alpha.find("X", 2, 1) if kind == "P" else alpha.find("Y", 1, 2)
    return NCPoly.word(algebra.space, alpha, (p,) * m)


def expected_factorial(space: ParamSpace, n: int, kind: str = "P") -> Ratio:
    """[n!]_a for P, [n!]_{1/a} for Q."""
    fact = q_factorial(n, space)
    if kind == "Q":
        fact = fact.reflect(space.a_slot)
    return Ratio.of(space, fact)


def factorial_pairings(algebra: FactoredAlgebra, n_max: int, kind: str = "P") -> dict[tuple[int, int], Ratio]:
    """<F^n, L^m> for F = P_2^1, L = X_2^1 (or Q_1^2, Y_1^2) and 1 <= n, m <= n_max."""
    if kind not in ("P", "Q"):
        raise ValueError(f"kind must be 'P' or 'Q', got {kind!r}")
    F = P(algebra, 2, 1) if kind == "P" else Q(algebra, 1, 2)
    out = {}
    power = F
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            out[(n, m)] = pair(power, _power_word(algebra, kind, m))
        if n < n_max:
            power = power * F
    return out


# -------------------- Roots of unity --------------------
@dataclass(frozen=True)
class RootReport:
    order: int
    degree: int
    recursion_failures: tuple
    qint_vanishes: bool              # [K]_a = 0 at a = zeta_K
    p_prime: Functional              # P^K/[K]_a at generic a
    q_prime: Functional              # Q^K/[K]_{1/a}
    pole_witness: str | None         # first pairing of P' or Q' with a pole at zeta_K
    power_vanishes: bool             # P^K pairs to 0 on every basis element at zeta_K
    relations: tuple[RelationResidual, ...]
    pq_coefficient: Ratio | None     # c with [P, Q'] = c q^{12} (Q^{K-1} B - A Q^{K-1})
    pq_at_root: CycScalar | None
    stated_at_root: CycScalar        # a - 1 at zeta_K

    @property
    def pole_free(self) -> bool:
        return self.pole_witness is None

    @property
    def pq_matches_stated(self) -> bool:
        return self.pq_at_root is not None and self.pq_at_root == self.stated_at_root


def _first_pole(F: Functional, order: int) -> str | None:
    for key in sorted(F.values):
        try:
            F.values[key].at_root(order)
        except PoleError:
            return F.algebra.key_str(key)
    return None


def root_extension(space: ParamSpace, K: int, degree: int | None = None) -> RootReport:
    """Adjoin P' = lim P^K/[K]_a and Q' = lim Q^K/[K]_{1/a} on gl(2) at a = zeta_K."""
    if space.n != 2:
        raise ConfigError(f"the root-of-unity extension is built on gl(2), got n={space.n}")
    if K < 2:
        raise ConfigError(f"root order must be at least 2, got {K}")
    degree = degree if degree is not None else 2 * K + 1
    if degree < K + 1:
        raise ConfigError(f"degree {degree} is too small for order {K}; need at least {K + 1}")
    algebra = FactoredAlgebra(space, degree)
    a = Ratio.of(space, space.a)
    qK = Ratio.of(space, q_int(K, space))
    qK_inv = Ratio.of(space, q_int(K, space).reflect(space.a_slot))

    Pg, Qg = P(algebra, 2, 1), Q(algebra, 1, 2)
    Pk, Qk = Pg ** K, Qg ** K
    Pp, Qp = Pk.scale(qK.inverse()), Qk.scale(qK_inv.inverse())
    log.progress(f"root {K}: P^K and Q^K built at degree {degree}")

    pole = _first_pole(Pp, K) or _first_pole(Qp, K)
    power_vanishes = all(v.vanishes_at_root(K) for v in Pk.values.values())

    relations = []
    for k in (1, 2):
        Hk = H(algebra, k)
        w = (k == 2) - (k == 1)
        relations.append(RelationResidual(f"[H{k},P']", "root-cartan", commutator(Hk, Pp) - Pp.scale(K * w)))
        relations.append(RelationResidual(f"[H{k},Q']", "root-cartan", commutator(Hk, Qp) + Qp.scale(K * w)))

    lower = Qg ** (K - 1)
    shape = (lower * B_char(algebra, 1) - A_char(algebra, 1) * lower).scale(Ratio.of(space, space.q(1, 2)))
    c = proportional(commutator(Pg, Qp), shape)
    c_root = None
    if c is not None:
        try:
            c_root = to_cyc(c, K)
        except PoleError:
            pass
    log.progress(f"root {K}: [P,Q'] coefficient {c}")
    return RootReport(
        order=K,
        degree=degree,
        recursion_failures=tuple(verify_gexp_recursion(space, 2 * K + 1, K=K)),
        qint_vanishes=to_cyc(qK, K).is_zero(),
        p_prime=Pp,
        q_prime=Qp,
        pole_witness=pole,
        power_vanishes=power_vanishes,
        relations=tuple(relations),
        pq_coefficient=c,
        pq_at_root=c_root,
        stated_at_root=to_cyc(a - 1, K),
    )


# -------------------- a = q = 1 --------------------
@dataclass(frozen=True)
class ClassicalReport:
    recursion_failures: tuple
    pairings: dict[int, Fraction]     # <P^n, X^n> at a = q = 1
    r_identity: bool

    @property
    def pairings_match(self) -> bool:
        return all(v == factorial(n) for n, v in self.pairings.items())

    @property
    def holds(self) -> bool:
        return not self.recursion_failures and self.pairings_match and self.r_identity


def classical_degeneration(space: ParamSpace, n_max: int = 4) -> ClassicalReport:
    """Send every parameter to 1: F_k = p^k/k!, <P^n, X^n> = n! and R = 1."""
    ones = {name: 1 for name in space.params}
    algebra = FactoredAlgebra(space, n_max)
    table = factorial_pairings(algebra, n_max)
    pairings = {n: substitute(table[(n, n)], ones) for n in range(1, n_max + 1)}
    R = build_R(space)
    identity = all(substitute(R.entries[i, j], ones) == (1 if i == j else 0)
                   for i in range(R.size) for j in range(R.size))
    return ClassicalReport(tuple(verify_gexp_recursion(space, n_max, classical=True)), pairings, identity)
