from __future__ import annotations

from ..ring import ParamSpace, Ratio
from ..tensor import Mat
from .relations import QuadRelation, pseudogroup_relations
from .rfamily import build_R, build_Rinv

Rep = dict  # {(i, k): Mat} image of z_i^k


def rep_pi(space: ParamSpace, R: Mat | None = None) -> Rep:
    """pi(z_i^k)_j^l = R_{ij}^{kl}."""
    R = R if R is not None else build_R(space)
    n = space.n
    out = {}
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            M = Mat.zeros(space)
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    M.entries[j - 1, l - 1] = R[(i, j), (k, l)]
            out[(i, k)] = M
    return out


def rep_pi_prime(space: ParamSpace, Rinv: Mat | None = None) -> Rep:
    """pi'(z_i^k)_j^l = (R^{-1})_{ji}^{lk}."""
    Rinv = Rinv if Rinv is not None else build_Rinv(space)
    n = space.n
    out = {}
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            M = Mat.zeros(space)
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    M.entries[j - 1, l - 1] = Rinv[(j, i), (l, k)]
            out[(i, k)] = M
    return out


def evaluate_relation(rel: QuadRelation, rep: Rep) -> Mat:
    space = next(iter(rep.values())).zero.space
    out = Mat.zeros(space)
    for (w1, w2), c in rel.terms.items():
        out = out + (rep[w1] @ rep[w2]).scale(c)
    return out


def verify_rep(rep: Rep, space: ParamSpace, relations: list[QuadRelation] | None = None):
    """Residual matrices of every pseudogroup relation under rep; only nonzero ones are returned."""
    relations = relations if relations is not None else pseudogroup_relations(space)
    failures = []
    for rel in relations:
        res = evaluate_relation(rel, rep)
        if not res.is_zero():
            failures.append((rel, res))
    return failures


def kernel_violations(rep: Rep, upper: bool) -> list[tuple[int, int]]:
    """Generators of I_- (upper=True: z_i^j, i<j) or I_+ (i>j) that rep does not kill."""
    return [(i, j) for (i, j), M in rep.items()
            if ((i < j) if upper else (i > j)) and not M.is_zero()]


def explicit_pi(space: ParamSpace, prime: bool = False) -> Rep:
    """Closed-form images: off-diagonal (1-a) M_i^j resp. (1-1/a) M_j^i, diagonal q^{ki} a^{+-(...)}."""
    n = space.n
    a = space.a
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            M = Mat.zeros(space)
            if i == j:
                for l in range(1, n + 1):
                    if prime:
                        e = -1 if l < i else 0
                    else:
                        e = 1 if l > i else 0
                    M.entries[l - 1, l - 1] = Ratio.of(space, space.q(i, l) * a ** e)
            elif not prime and i > j:
                # pi(z_i^j) = (1-a) M_j^i
                M.entries[j - 1, i - 1] = Ratio.of(space, 1 - a)
            elif prime and i < j:
                # pi'(z_i^j) = (1-1/a) M_j^i
                M.entries[j - 1, i - 1] = Ratio.of(space, 1 - a.inverse_monomial())
            out[(i, j)] = M
    return out
