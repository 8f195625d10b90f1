from __future__ import annotations
from dataclasses import dataclass
from itertools import product

from ..ncalg import k_pair, k_simple
from ..ring import Ratio
from ..utils import log
from .algebra import FactoredAlgebra
from .functional import (
    Functional,
    H,
    P,
    Q,
    TensorFunctional,
    character,
    commutator,
    counit,
    dual_comul,
    proportional,
    tensor_mul,
)


@dataclass(frozen=True)
class RelationResidual:
    name: str
    label: str
    residual: Functional | TensorFunctional

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()

    def witness(self) -> str | None:
        return self.residual.witness()


def simple_P(algebra: FactoredAlgebra, i: int) -> Functional:
    return P(algebra, i + 1, i)


def simple_Q(algebra: FactoredAlgebra, i: int) -> Functional:
    return Q(algebra, i, i + 1)


def _cartan_chars(algebra: FactoredAlgebra, i: int, lowered: int) -> tuple[Ratio, ...]:
    """c_i = c_{i+1} = q^{i+1,i}, c_k = q^{i+1,k} q^{ki} elsewhere, with slot lowered divided by a."""
    space = algebra.space
    a = Ratio.of(space, space.a)
    out = []
    for k in range(1, algebra.n + 1):
        if k in (i, i + 1):
            c = Ratio.of(space, space.q(i + 1, i))
        else:
            c = Ratio.of(space, space.q(i + 1, k) * space.q(k, i))
        out.append(c / a if k == lowered else c)
    return tuple(out)


def A_char(algebra: FactoredAlgebra, i: int) -> Functional:
    """C_i (q^{i+1,i})^{H_i+H_{i+1}} a^{-H_i}."""
    return character(algebra, _cartan_chars(algebra, i, i))


def B_char(algebra: FactoredAlgebra, i: int) -> Functional:
    """C_i (q^{i+1,i})^{H_i+H_{i+1}} a^{-H_{i+1}}."""
    return character(algebra, _cartan_chars(algebra, i, i + 1))


def pq_rhs(algebra: FactoredAlgebra, i: int) -> Functional:
    """a/(1-a) q^{i,i+1} (B_i - A_i), the right side of [P_i, Q_i]."""
    space = algebra.space
    a = Ratio.of(space, space.a)
    c = a / (1 - a) * Ratio.of(space, space.q(i, i + 1))
    return (B_char(algebra, i) - A_char(algebra, i)).scale(c)


# -------------------- Quantum group relations --------------------
def cartan_relations(algebra: FactoredAlgebra) -> list[RelationResidual]:
    """[H_k, P_i^j] = (d_ki - d_kj) P_i^j and the same for Q_i^j."""
    n = algebra.n
    out = []
    for k in range(1, n + 1):
        Hk = H(algebra, k)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                F, name = (P(algebra, i, j), f"P{i}^{j}") if i > j else (Q(algebra, i, j), f"Q{i}^{j}")
                weight = (k == i) - (k == j)
                res = commutator(Hk, F) - F.scale(weight)
                out.append(RelationResidual(f"[H{k},{name}]", "cartan", res))
    return out


def pq_relations(algebra: FactoredAlgebra) -> list[RelationResidual]:
    """[P_i, Q_j] = d_ij a/(1-a) q^{i,i+1} (B_i - A_i)."""
    out = []
    for i in range(1, algebra.n):
        for j in range(1, algebra.n):
            res = commutator(simple_P(algebra, i), simple_Q(algebra, j))
            if i == j:
                res = res - pq_rhs(algebra, i)
            out.append(RelationResidual(f"[P{i},Q{j}]", "pq-commutator", res))
        log.progress(f"[P{i},Q*] done")
    return out


def distant_relations(algebra: FactoredAlgebra) -> list[RelationResidual]:
    """P_j P_i = k_ij P_i P_j and Q_i Q_j = k_ij Q_j Q_i for i > j + 1."""
    space = algebra.space
    out = []
    for i in range(1, algebra.n):
        for j in range(1, i - 1):
            k = Ratio.of(space, k_pair(space, i, j))
            Pi, Pj = simple_P(algebra, i), simple_P(algebra, j)
            Qi, Qj = simple_Q(algebra, i), simple_Q(algebra, j)
            out.append(RelationResidual(f"[P{j},P{i}]_k{i}{j}", "distant", commutator(Pj, Pi, k)))
            out.append(RelationResidual(f"[Q{i},Q{j}]_k{i}{j}", "distant", commutator(Qi, Qj, k)))
    return out


@dataclass(frozen=True)
class QReadings:
    """The two readings of the Q-Q quommutation rule: adjacent indices or |i-j| > 1."""
    adjacent_k: tuple[Ratio | None, ...]     # solved k per adjacent pair, None when no k works
    distant: tuple[RelationResidual, ...]

    @property
    def adjacent_holds(self) -> bool:
        return bool(self.adjacent_k) and all(k is not None for k in self.adjacent_k)

    @property
    def distant_holds(self) -> bool:
        return all(r.holds for r in self.distant)


def q_readings(algebra: FactoredAlgebra) -> QReadings:
    adjacent = []
    for i in range(1, algebra.n - 1):
        Qi, Qn = simple_Q(algebra, i), simple_Q(algebra, i + 1)
        adjacent.append(proportional(Qn * Qi, Qi * Qn))
    distant = tuple(r for r in distant_relations(algebra) if r.name.startswith("[Q"))
    return QReadings(tuple(adjacent), distant)


# -------------------- Serre coefficients --------------------
@dataclass(frozen=True)
class SerreSolution:
    kind: str            # "P" or "Q"
    index: int
    k_stated: Ratio
    k_root: Ratio | None  # k making the quommutator a root vector
    r: Ratio | None
    s: Ratio | None
    r_literal: Ratio | None
    s_literal: Ratio | None
    r_wrong_k: Ratio | None

    @property
    def solved(self) -> bool:
        return None not in (self.k_root, self.r, self.s)


def _serre_pair(E: Functional, F: Functional, G: Functional) -> tuple[Ratio | None, Ratio | None]:
    """r, s with E F = r F E and E G = s G E."""
    return proportional(E * F, F * E), proportional(E * G, G * E)


def derive_coefficients(algebra: FactoredAlgebra) -> list[SerreSolution]:
    """Solve the Serre relations [[P_i,P_{i+1}]_k, P_i]_r = 0, [[P_i,P_{i+1}]_k, P_{i+1}]_s = 0 and the Q mirror.

    k is found as the ratio making the quommutator vanish on the ordered pair of simple
    letters; the stated k_{i+1} and a deliberately wrong a^2 k_{i+1} are also tried.
    """
    space = algebra.space
    alpha = algebra.alphabet
    a = Ratio.of(space, space.a)
    out = []
    for i in range(1, algebra.n - 1):
        k_stated = Ratio.of(space, k_simple(space, i + 1))
        for kind in ("P", "Q"):
            if kind == "P":
                F, G = simple_P(algebra, i), simple_P(algebra, i + 1)
                key = ((alpha.find("X", i + 1, i), alpha.find("X", i + 2, i + 1)), ())
            else:
                F, G = simple_Q(algebra, i + 1), simple_Q(algebra, i)
                key = ((), (alpha.find("Y", i + 1, i + 2), alpha.find("Y", i, i + 1)))
            FG, GF = F * G, G * F
            k_root = proportional(FG[key], GF[key])
            r = s = None
            if k_root is not None:
                r, s = _serre_pair(FG - GF.scale(k_root), F, G)
            r_lit, s_lit = _serre_pair(FG - GF.scale(k_stated), F, G)
            r_wrong, _ = _serre_pair(FG - GF.scale(a * a * k_stated), F, G)
            out.append(SerreSolution(kind, i, k_stated, k_root, r, s, r_lit, s_lit, r_wrong))
            log.progress(f"serre {kind}{i}: k={k_root} r={r} s={s}")
    return out


# -------------------- Coproducts --------------------
def coproduct_formulas(algebra: FactoredAlgebra) -> list[RelationResidual]:
    """D(H_k) primitive, D(P_i) = P_i (x) 1 + A_i (x) P_i, D(Q_i) = Q_i (x) B_i + 1 (x) Q_i, D(A_i) group-like."""
    eps = counit(algebra)
    T = TensorFunctional.tensor
    out = []
    for k in range(1, algebra.n + 1):
        Hk = H(algebra, k)
        out.append(RelationResidual(f"D(H{k})", "coproduct", dual_comul(Hk) - T(Hk, eps) - T(eps, Hk)))
    for i in range(1, algebra.n):
        Pi, Qi = simple_P(algebra, i), simple_Q(algebra, i)
        Ai, Bi = A_char(algebra, i), B_char(algebra, i)
        out.append(RelationResidual(f"D(P{i})", "coproduct", dual_comul(Pi) - T(Pi, eps) - T(Ai, Pi)))
        out.append(RelationResidual(f"D(Q{i})", "coproduct", dual_comul(Qi) - T(Qi, Bi) - T(eps, Qi)))
        out.append(RelationResidual(f"D(A{i})", "coproduct", dual_comul(Ai) - T(Ai, Ai)))
    return out


def bialgebra_compatibility(algebra: FactoredAlgebra, pairs: list[tuple[str, str]] | None = None
                            ) -> list[RelationResidual]:
    """D(FG) = D(F) D(G); every ordered pair of simple generators unless pairs is given."""
    gens = {f"P{i}": simple_P(algebra, i) for i in range(1, algebra.n)}
    gens.update({f"Q{i}": simple_Q(algebra, i) for i in range(1, algebra.n)})
    gens.update({f"H{k}": H(algebra, k) for k in range(1, algebra.n + 1)})
    if pairs is None:
        pairs = list(product(gens, repeat=2))
    out = []
    for f, g in pairs:
        F, G = gens[f], gens[g]
        res = dual_comul(F * G) - tensor_mul(dual_comul(F), dual_comul(G))
        out.append(RelationResidual(f"D({f}{g})", "bialgebra", res))
    return out


# -------------------- Aggregates --------------------
def verify_relations(algebra: FactoredAlgebra) -> list[RelationResidual]:
    """Cartan, [P,Q] and distant quommutation residuals; Serre relations go through derive_coefficients."""
    out = cartan_relations(algebra) + pq_relations(algebra) + distant_relations(algebra)
    log.progress(f"{len(out)} quantum group relations checked, {sum(not r.holds for r in out)} failing")
    return out


def verify_coproducts(algebra: FactoredAlgebra, pairs: list[tuple[str, str]] | None = None
                      ) -> list[RelationResidual]:
    return coproduct_formulas(algebra) + bialgebra_compatibility(algebra, pairs)
