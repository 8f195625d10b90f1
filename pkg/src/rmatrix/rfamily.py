from __future__ import annotations
from dataclasses import dataclass
from typing import Callable

from ..ring import ParamSpace, Ratio, Scalar
from ..tensor import Mat

QFun = Callable[[int, int], Scalar]


def _qfun(space: ParamSpace, q: QFun | None, inverted: bool) -> QFun:
    base = q or space.q
    if inverted:
        return lambda i, j: base(j, i)
    return base


def build_R(space: ParamSpace, q: QFun | None = None, inverted: bool = False,
            offdiag: Scalar | None = None) -> Mat:
    """Twisted gl(n) R-matrix in the fundamental representation.

    R = sum_i M_i^i (x) M_i^i + sum_{i<j} (q^{ji} M_j^j (x) M_i^i + a q^{ij} M_i^i (x) M_j^j
        + (1-a) M_j^i (x) M_i^j)

    q overrides the parameter table (used by the constrained gl(3) family).
    inverted replaces every q^{ij} and a by its inverse. offdiag replaces the
    (1-a) coefficient, which is how the corrupted control is built.
    """
    qf = _qfun(space, q, inverted)
    a = space.a.inverse_monomial() if inverted else space.a
    off = offdiag if offdiag is not None else 1 - a
    R = Mat.zeros(space, 2)
    n = space.n
    for i in range(1, n + 1):
        R[(i, i), (i, i)] = Ratio.one(space)
        for j in range(i + 1, n + 1):
            R[(j, i), (j, i)] = Ratio.of(space, qf(j, i))
            R[(i, j), (i, j)] = Ratio.of(space, a * qf(i, j))
            R[(j, i), (i, j)] = Ratio.of(space, off)
    return R


def build_P(R: Mat) -> Mat:
    """P_{ij}^{kl} = R_{ji}^{kl}."""
    P = Mat.zeros(R.zero.space, 2, R.dim_per_leg)
    for (i, j) in P.multi_indices():
        for (k, l) in P.multi_indices():
            P[(i, j), (k, l)] = R[(j, i), (k, l)]
    return P


def build_Rinv(space: ParamSpace, q: QFun | None = None) -> Mat:
    """Inverse of R from the closed form: same formula with q^{kl} and a inverted."""
    return build_R(space, q=q, inverted=True)


@dataclass(frozen=True)
class RFamily:
    space: ParamSpace
    R: Mat
    P: Mat
    Rinv: Mat

    @classmethod
    def build(cls, space: ParamSpace, q: QFun | None = None) -> RFamily:
        R = build_R(space, q=q)
        return cls(space, R, build_P(R), build_Rinv(space, q=q))

    def Pinv(self) -> Mat:
        """P^{-1} = (P - (1-a)) / a, from the Hecke relation."""
        space = self.space
        a = Ratio.of(space, space.a)
        shift = Mat.identity(space, 2).scale(1 - a)
        return (self.P - shift).scale(a.inverse())


def corrupted_R(space: ParamSpace) -> Mat:
    """R with the (1-a) coefficient replaced by (1+a)."""
    return build_R(space, offdiag=1 + space.a)


def cyclic_P(space: ParamSpace) -> Mat:
    """Hecke but non-braid P: the (1, n) block uses the reversed index order.

    Needs n >= 3. Every 2x2 block keeps eigenvalues {1, -a}, so the Hecke
    relation and a nondegenerate quantum plane survive while the braid
    relation fails.
    """
    if space.n < 3:
        raise ValueError("the cyclic control needs n >= 3")
    P = build_P(build_R(space))
    n = space.n
    a = space.a
    P[(1, n), (1, n)] = Ratio.zero(space)
    P[(1, n), (n, 1)] = Ratio.of(space, a * space.q(n, 1))
    P[(n, 1), (1, n)] = Ratio.of(space, space.q(1, n))
    P[(n, 1), (n, 1)] = Ratio.of(space, 1 - a)
    return P
