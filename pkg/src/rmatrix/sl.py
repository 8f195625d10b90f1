from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction

from ..ring import ParamSpace, Ratio, Scalar
from ..tensor import Mat, kron
from .rfamily import QFun, build_R


@dataclass(frozen=True)
class SlReduction:
    space: ParamSpace
    kappa: tuple[Scalar, ...]
    q_hat: tuple[tuple[Scalar, ...], ...]  # 0-based n x n table
    R_sl: Mat

    def q_hat_fn(self, i: int, j: int) -> Scalar:
        return self.q_hat[i - 1][j - 1]


def sl_reduce(space: ParamSpace, q: QFun | None = None) -> SlReduction:
    """kappa_i = (a^i prod_k q^{ki})^{1/n}, q_hat^{ij} = (kappa_i/kappa_j) q^{ij} and

    R_sl = (1-a) sum_{i<j} (kappa_i/kappa_j) M_j^i (x) M_i^j + sum_{i,j} q~_hat^{ij} M_i^i (x) M_j^j

    with q~_hat^{ij} carrying the extra factor a for i < j.
    """
    n = space.n
    if space.exp_denom % n:
        raise ValueError(f"exponent denominator {space.exp_denom} is not divisible by n={n}")
    qf = q or space.q
    a = space.a
    kappa = []
    for i in range(1, n + 1):
        base = a ** i
        for k in range(1, n + 1):
            base = base * qf(k, i)
        kappa.append(base ** Fraction(1, n))
    q_hat = tuple(
        tuple(kappa[i] * kappa[j].inverse_monomial() * qf(i + 1, j + 1) for j in range(n))
        for i in range(n)
    )
    R = Mat.zeros(space, 2)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = q_hat[i - 1][j - 1] * (a if i < j else 1)
            R[(i, j), (i, j)] = Ratio.of(space, c)
            if i < j:
                R[(j, i), (i, j)] = Ratio.of(space, (1 - a) * kappa[i - 1] * kappa[j - 1].inverse_monomial())
    return SlReduction(space, tuple(kappa), q_hat, R)


def check_constraint(red: SlReduction) -> list[str]:
    """prod_i q_hat^{ij} a^j - a^{(n+1)/2} for each column j; returns the nonzero ones."""
    space = red.space
    n = space.n
    target = space.a ** Fraction(n + 1, 2)
    bad = []
    for j in range(1, n + 1):
        prod = space.a ** j
        for i in range(1, n + 1):
            prod = prod * red.q_hat_fn(i, j)
        if prod != target:
            bad.append(f"column {j}: {prod} != {target}")
    return bad


def check_kappa_product(red: SlReduction) -> bool:
    """prod_i kappa_i = a^{(n+1)/2}."""
    space = red.space
    prod = space.one()
    for k in red.kappa:
        prod = prod * k
    return prod == space.a ** Fraction(space.n + 1, 2)


def check_hat_fixed(red: SlReduction) -> list[str]:
    """Parameters already satisfying prod_i q^{ij} a^j = a^{(n+1)/2} are fixed by the reduction.

    The hatted table of any reduction satisfies that constraint, so it is fed back in.
    """
    again = sl_reduce(red.space, q=red.q_hat_fn)
    n = red.space.n
    return [f"q_hat({i},{j}) moved" for i in range(1, n + 1) for j in range(1, n + 1)
            if again.q_hat_fn(i, j) != red.q_hat_fn(i, j)]


def rescaled(red: SlReduction) -> Mat:
    """(D (x) 1) R_sl (D^{-1} (x) 1), D = diag(kappa): removes the kappa_i/kappa_j factors."""
    space = red.space
    n = space.n
    D = Mat.zeros(space)
    Dinv = Mat.zeros(space)
    for i in range(n):
        D.entries[i, i] = Ratio.of(space, red.kappa[i])
        Dinv.entries[i, i] = Ratio.of(space, red.kappa[i].inverse_monomial())
    I = Mat.identity(space)
    return kron(D, I) @ red.R_sl @ kron(Dinv, I)


def check_rescaling(red: SlReduction) -> Mat:
    return rescaled(red) - build_R(red.space, q=red.q_hat_fn)
