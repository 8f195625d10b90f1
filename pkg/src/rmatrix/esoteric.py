from __future__ import annotations
from dataclasses import dataclass

from ..ring import ParamSpace, Ratio, Scalar
from ..tensor import Mat, embed, kron
from .rfamily import build_R


@dataclass(frozen=True)
class EpsMat:
    """zeroth + eps * first with eps^2 = 0."""
    zeroth: Mat
    first: Mat

    def __add__(self, other: EpsMat) -> EpsMat:
        return EpsMat(self.zeroth + other.zeroth, self.first + other.first)

    def __sub__(self, other: EpsMat) -> EpsMat:
        return EpsMat(self.zeroth - other.zeroth, self.first - other.first)

    def __matmul__(self, other: EpsMat) -> EpsMat:
        return EpsMat(self.zeroth @ other.zeroth,
                      self.zeroth @ other.first + self.first @ other.zeroth)

    def embed(self, positions: tuple[int, int], total_legs: int) -> EpsMat:
        return EpsMat(embed(self.zeroth, positions, total_legs), embed(self.first, positions, total_legs))


def constrained_q(space: ParamSpace):
    """q^{12} = q^{23} = q, q^{13} = q^2, all expressed through the q12 slot."""
    q = space.q(1, 2)

    def qf(i: int, j: int) -> Scalar:
        if i == j:
            return space.one()
        if i > j:
            return qf(j, i).inverse_monomial()
        return q * q if (i, j) == (1, 3) else q
    return qf


def delta_R(space: ParamSpace, qf) -> Mat:
    """q^{13} M_1^2 (x) M_3^2 - M_3^2 (x) M_1^2."""
    return (kron(Mat.unit(space, 1, 2), Mat.unit(space, 3, 2)).scale(Ratio.of(space, qf(1, 3)))
            - kron(Mat.unit(space, 3, 2), Mat.unit(space, 1, 2)))


def esoteric_gl3(space: ParamSpace, constrained: bool) -> EpsMat:
    """YBE residual of R + eps dR; the first-order part is the deformation obstruction."""
    if space.n != 3:
        raise ValueError(f"the esoteric deformation lives on gl(3), got n={space.n}")
    qf = constrained_q(space) if constrained else space.q
    R = EpsMat(build_R(space, q=qf), delta_R(space, qf))
    R12, R13, R23 = R.embed((1, 2), 3), R.embed((1, 3), 3), R.embed((2, 3), 3)
    return R12 @ R13 @ R23 - R23 @ R13 @ R12
