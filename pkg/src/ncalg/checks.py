from __future__ import annotations
from dataclasses import dataclass

from ..rmatrix import build_calP, check_braid
from ..tensor import Mat
from .poly import NCPoly
from .presets import Presentation, preset_calculus, preset_pseudogroup
from .rewrite import Ambiguity


@dataclass(frozen=True)
class BraidEquivalence:
    braid_holds: bool
    overlaps: tuple[Ambiguity, ...]

    @property
    def consistent(self) -> bool:
        """Calculus confluent exactly when P satisfies the braid relation."""
        return self.braid_holds == (not self.overlaps)


def verify_braid_equivalence(P: Mat, degree: int = 3) -> BraidEquivalence:
    """Compare the braid residual of P with the degree-3 overlaps of its differential calculus."""
    calc = preset_calculus(P)
    return BraidEquivalence(check_braid(P).is_zero(), tuple(calc.system.local_confluence(degree)))


def check_calP_conjugation(P: Mat, Pinv: Mat, pres: Presentation | None = None) -> list[tuple]:
    """(Z x Z)(calP - 1) = 0 read as P (Z x Z) P^-1 = Z x Z with z_i^m z_j^n at row (i,j), column (m,n).

    calP = P (x) (P^-1)^T acts on the row-major vector of Z x Z; every entry of the
    result minus Z x Z must vanish modulo the pseudogroup relations.
    """
    space = P.zero.space
    pres = pres or preset_pseudogroup(space)
    alpha = pres.alphabet
    calP = build_calP(P, Pinv)
    idx = list(P.multi_indices())

    def zz(i, j, m, l):
        return (alpha.find("z", i, m), alpha.find("z", j, l))

    bad = []
    for (i, j) in idx:
        for (m, l) in idx:
            row = calP.flat((i, j, m, l))
            out = NCPoly.word(space, alpha, zz(i, j, m, l), -1)
            for col in range(calP.size):
                c = calP.entries[row, col]
                if c.is_zero():
                    continue
                r, s, u, v = calP.unflat(col)
                out = out + NCPoly.word(space, alpha, zz(r, s, u, v)).scale(c)
            res = pres.nf(out)
            if not res.is_zero():
                bad.append(((i, j), (m, l), res))
    return bad
