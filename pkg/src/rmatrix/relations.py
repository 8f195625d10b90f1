from __future__ import annotations
from dataclasses import dataclass

from ..ring import ParamSpace, Ratio
from ..tensor import Mat

Entry = tuple[int, int]  # (row, column) of z_row^column


@dataclass(frozen=True)
class QuadRelation:
    """sum c * z_{w1} z_{w2} = 0 over pairs of matrix entries."""
    family: str
    indices: tuple
    terms: dict  # {(Entry, Entry): Ratio}


def _add(terms: dict, key, c):
    v = terms.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = v


def pseudogroup_relations(space: ParamSpace) -> list[QuadRelation]:
    """The four relation families of the pseudogroup, written out entrywise.

    same-row:    z_i^a z_i^b = q^{ab} z_i^b z_i^a                    (a < b)
    same-column: z_i^a z_j^a = (a q^{ij})^{-1} z_j^a z_i^a           (i < j)
    cross:       z_i^a z_j^b = (a q^{ab}/q^{ij}) z_j^b z_i^a          (i > j, a < b)
    exchange:    q^{ij} z_i^a z_j^b - q^{ab} z_j^b z_i^a = (a-1) z_j^a z_i^b   (i > j, a > b)
    """
    n = space.n
    A = space.a
    one = Ratio.one(space)
    R = lambda x: Ratio.of(space, x)
    out = []
    for i in range(1, n + 1):
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                out.append(QuadRelation("same-row", (i, a, b), {
                    ((i, a), (i, b)): one,
                    ((i, b), (i, a)): -R(space.q(a, b)),
                }))
    for a in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(QuadRelation("same-column", (i, j, a), {
                    ((i, a), (j, a)): one,
                    ((j, a), (i, a)): -R((A * space.q(i, j)).inverse_monomial()),
                }))
    for i in range(1, n + 1):
        for j in range(1, i):
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    out.append(QuadRelation("cross", (i, j, a, b), {
                        ((i, a), (j, b)): one,
                        ((j, b), (i, a)): -R(A * space.q(a, b) * space.q(j, i)),
                    }))
                for b in range(1, a):
                    out.append(QuadRelation("exchange", (i, j, a, b), {
                        ((i, a), (j, b)): R(space.q(i, j)),
                        ((j, b), (i, a)): -R(space.q(a, b)),
                        ((j, a), (i, b)): R(1 - A),
                    }))
    return out


def commutator_relations(P: Mat) -> list[QuadRelation]:
    """Entries of [P, Z (x) Z] = 0:

    sum_{kl} P_{ij}^{kl} z_k^m z_l^n - sum_{kl} z_i^k z_j^l P_{kl}^{mn} = 0.
    """
    n = P.dim_per_leg
    idx = list(P.multi_indices())
    out = []
    for (i, j) in idx:
        for (m, nn) in idx:
            terms: dict = {}
            for (k, l) in idx:
                c = P[(i, j), (k, l)]
                if not c.is_zero():
                    _add(terms, ((k, m), (l, nn)), c)
                c = P[(k, l), (m, nn)]
                if not c.is_zero():
                    _add(terms, ((i, k), (j, l)), -c)
            if terms:
                out.append(QuadRelation("commutator", (i, j, m, nn), terms))
    return out


def row_relations(M: Mat) -> list[dict]:
    """Columns of v v M = 0 for a two-letter vector v: {(k, l): M_{kl}^{mn}} per (m, n)."""
    out = []
    for col in M.multi_indices():
        terms = {}
        for row in M.multi_indices():
            c = M[row, col]
            if not c.is_zero():
                terms[row] = c
        if terms:
            out.append(terms)
    return out
