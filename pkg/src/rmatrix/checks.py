from __future__ import annotations

from ..ring import Ratio
from ..tensor import Mat, embed, kron, mat_poly


def check_hecke(P: Mat) -> Mat:
    """(P - 1)(P + a)."""
    space = P.zero.space
    return mat_poly(P, [1, -space.a])


def check_braid(P: Mat) -> Mat:
    P12 = embed(P, (1, 2), 3)
    P23 = embed(P, (2, 3), 3)
    return P12 @ P23 @ P12 - P23 @ P12 @ P23


def check_ybe(R: Mat) -> Mat:
    R12 = embed(R, (1, 2), 3)
    R13 = embed(R, (1, 3), 3)
    R23 = embed(R, (2, 3), 3)
    return R12 @ R13 @ R23 - R23 @ R13 @ R12


def check_inverse(R: Mat, Rinv: Mat) -> Mat:
    return R @ Rinv - Mat.identity(R.zero.space, 2, R.dim_per_leg)


def build_calP(P: Mat, Pinv: Mat | None = None) -> Mat:
    """Conjugation M -> P M P^{-1} on End(V (x) V), as P (x) (P^{-1})^T on four legs."""
    Pinv = Pinv if Pinv is not None else P.inverse()
    return kron(P, Pinv.transpose())


def check_cubic(calP: Mat) -> Mat:
    """(calP - 1)(calP + a)(calP + 1/a)."""
    space = calP.zero.space
    a = Ratio.of(space, space.a)
    return mat_poly(calP, [1, -a, -a.inverse()])


def block_spectrum(P: Mat) -> list[tuple[tuple[int, int], Ratio, Ratio]]:
    """Trace and determinant of P on span{e_i (x) e_j, e_j (x) e_i} for each i < j."""
    out = []
    n = P.dim_per_leg
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            u, v = (i, j), (j, i)
            tr = P[u, u] + P[v, v]
            det = P[u, u] * P[v, v] - P[u, v] * P[v, u]
            out.append(((i, j), tr, det))
    return out


def check_block_spectrum(P: Mat) -> list[str]:
    """Blocks whose trace is not 1-a or whose determinant is not -a."""
    space = P.zero.space
    a = Ratio.of(space, space.a)
    bad = []
    for (i, j), tr, det in block_spectrum(P):
        if tr != 1 - a or det != -a:
            bad.append(f"block ({i},{j}): trace {tr}, det {det}")
    return bad
