from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .params import ParamSpace
from .scalar import Ratio, Scalar
from .cyclotomic import CycScalar, to_cyc


def q_int(n: int, space: ParamSpace) -> Scalar:
    """[n]_a = 1 + a + ... + a^{n-1}."""
    if n < 0:
        raise ValueError(f"q-integer needs n >= 0, got {n}")
    out = space.zero()
    for k in range(n):
        out = out + space.a ** k
    return out


def q_factorial(n: int, space: ParamSpace) -> Scalar:
    if n < 0:
        raise ValueError(f"q-factorial needs n >= 0, got {n}")
    out = space.one()
    for k in range(1, n + 1):
        out = out * q_int(k, space)
    return out


def q_binomial(n: int, k: int, space: ParamSpace) -> Scalar:
    """Gaussian binomial in a, built from [n k] = [n-1 k-1] + a^k [n-1 k]."""
    if n < 0:
        raise ValueError(f"q-binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return space.zero()
    row = [space.one()]
    for m in range(1, n + 1):
        new = [space.one()] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1] + space.a ** j * row[j]
        row = new
    return row[k]


def qexp_coeffs(D: int, space: ParamSpace, flavor: str = "a") -> list[Ratio]:
    """[1/[n!]_f for n = 0..D], f = a or 1/a."""
    if flavor not in ("a", "1/a"):
        raise ValueError(f"unknown q-exponential flavor {flavor!r}")
    out = []
    for n in range(D + 1):
        fact = q_factorial(n, space)
        if flavor == "1/a":
            fact = fact.reflect(space.a_slot)
        out.append(Ratio.one(space) / Ratio.of(space, fact))
    return out


@dataclass(frozen=True)
class GexpTerm:
    k: int
    m: int
    n: int
    coefficient: CycScalar


def gexp_scheme(K: int, D: int, space: ParamSpace) -> list[GexpTerm]:
    """Generalized exponential at a = zeta_K: F_{mK+n} = p'^m/m! * p^n/[n!]_a, p^K = 0."""
    if K < 2:
        raise ValueError(f"root order must be at least 2, got {K}")
    out = []
    for k in range(D + 1):
        m, n = divmod(k, K)
        fact = to_cyc(q_factorial(n, space), K)
        if fact.is_zero():
            raise ValueError(f"[{n}!]_a vanishes at a primitive {K}-th root of unity")
        out.append(GexpTerm(k, m, n, fact.inverse() * CycScalar.const(space, K, Fraction(1, factorial(m)))))
    return out


# -------------------- recursion F_k F_1 = [k+1]_a F_{k+1} --------------------
def _gexp_element(k: int, K: int | None, space: ParamSpace, classical: bool) -> dict:
    """F_k as {(power of p', power of p): coefficient}."""
    if classical:
        return {(0, k): Fraction(1, factorial(k))}
    if K is None:
        return {(0, k): Ratio.one(space) / Ratio.of(space, q_factorial(k, space))}
    term = gexp_scheme(K, k, space)[k]
    return {(term.m, term.n): term.coefficient}


def _times_p(elem: dict, K: int | None) -> dict:
    out = {}
    for (mp, n), c in elem.items():
        if K is not None and n + 1 >= K:
            continue
        out[(mp, n + 1)] = c
    return out


def verify_gexp_recursion(space: ParamSpace, k_max: int, K: int | None = None,
                          classical: bool = False) -> list[tuple[int, str]]:
    """Residuals of F_k F_1 - [k+1]_a F_{k+1} for k < k_max; empty when all vanish."""
    failures = []
    for k in range(k_max):
        lhs = _times_p(_gexp_element(k, K, space, classical), K)
        rhs_elem = _gexp_element(k + 1, K, space, classical)
        if classical:
            factor = k + 1
        elif K is None:
            factor = Ratio.of(space, q_int(k + 1, space))
        else:
            factor = to_cyc(q_int(k + 1, space), K)
        keys = set(lhs) | set(rhs_elem)
        for key in sorted(keys):
            diff = lhs.get(key, 0) - factor * rhs_elem[key] if key in rhs_elem else lhs[key]
            if not _is_zero(diff):
                failures.append((k, f"coefficient of p'^{key[0]} p^{key[1]}: {diff}"))
    return failures


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
