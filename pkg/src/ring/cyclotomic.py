from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Poly, Symbol, cyclotomic_poly, integer_nthroot

from .params import ParamSpace
from .scalar import Ratio, Scalar
from ..utils.errors import NoExactRootError, PoleError, ZeroDenominatorError


@lru_cache(maxsize=None)
def cyclotomic_coeffs(K: int) -> tuple[int, ...]:
    """Coefficients of Phi_K, lowest degree first."""
    if K < 1:
        raise ValueError(f"root order must be positive, got {K}")
    x = Symbol("x")
    coeffs = Poly(cyclotomic_poly(K, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


# -------------------- polynomial helpers over Ratio, lowest degree first --------------------
def _trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pmul(p: list, q: list, zero: Ratio) -> list:
    if not p or not q:
        return []
    out = [zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x.is_zero():
            continue
        for j, y in enumerate(q):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _psub(p: list, q: list, zero: Ratio) -> list:
    out = [zero] * max(len(p), len(q))
    for i, x in enumerate(p):
        out[i] = out[i] + x
    for i, y in enumerate(q):
        out[i] = out[i] - y
    return _trim(out)


def _pdivmod(p: list, d: list, zero: Ratio) -> tuple[list, list]:
    if not d:
        raise ZeroDenominatorError("zero denominator")
    r = list(p)
    quot = [zero] * max(len(p) - len(d) + 1, 0)
    lead_inv = d[-1].inverse()
    while len(r) >= len(d) and r:
        shift = len(r) - len(d)
        c = r[-1] * lead_inv
        quot[shift] = c
        for i, y in enumerate(d):
            r[i + shift] = r[i + shift] - c * y
        _trim(r)
    return _trim(quot), r


class CycScalar:
    """Element of Q(q-params)[a]/Phi_K(a): a polynomial in a of degree < phi(K)
    with coefficients Ratio free of a."""
    __slots__ = ("space", "order", "coeffs")

    def __init__(self, space: ParamSpace, order: int, coeffs):
        self.space = space
        self.order = order
        zero = Ratio.zero(space)
        poly = _trim([Ratio.of(space, c) for c in coeffs])
        for c in poly:
            if c.involves(space.a_slot):
                raise ValueError(f"CycScalar coefficient {c} still depends on a")
        phi = [Ratio.of(space, c) for c in cyclotomic_coeffs(order)]
        if len(poly) >= len(phi):
            _, poly = _pdivmod(poly, phi, zero)
        self.coeffs = tuple(poly)

    @classmethod
    def zeta(cls, space: ParamSpace, order: int) -> CycScalar:
        return cls(space, order, [0, 1])

    @classmethod
    def const(cls, space: ParamSpace, order: int, value) -> CycScalar:
        return cls(space, order, [value])

    def _phi(self) -> list:
        return [Ratio.of(self.space, c) for c in cyclotomic_coeffs(self.order)]

    def _coerce(self, other) -> CycScalar:
        if isinstance(other, CycScalar):
            if other.order != self.order:
                raise ValueError(f"mixing roots of order {self.order} and {other.order}")
            return other
        return CycScalar(self.space, self.order, [other])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> CycScalar:
        other = self._coerce(other)
        zero = Ratio.zero(self.space)
        return CycScalar(self.space, self.order, _psub(list(self.coeffs), [-c for c in other.coeffs], zero))

    __radd__ = __add__

    def __neg__(self) -> CycScalar:
        return CycScalar(self.space, self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> CycScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycScalar:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycScalar:
        other = self._coerce(other)
        zero = Ratio.zero(self.space)
        return CycScalar(self.space, self.order, _pmul(list(self.coeffs), list(other.coeffs), zero))

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        """Extended Euclid against Phi_K."""
        if self.is_zero():
            raise PoleError("pole at assignment", witness=self)
        zero = Ratio.zero(self.space)
        one = Ratio.one(self.space)
        r0, r1 = self._phi(), list(self.coeffs)
        s0, s1 = [], [one]
        while r1:
            q, r = _pdivmod(r0, r1, zero)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, zero), zero)
        # r0 is a nonzero constant since Phi_K is irreducible
        inv = r0[0].inverse()
        return CycScalar(self.space, self.order, [c * inv for c in s0])

    def __truediv__(self, other) -> CycScalar:
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int) -> CycScalar:
        if k < 0:
            return self.inverse() ** (-k)
        out = CycScalar.const(self.space, self.order, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Scalar, Ratio)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(str(c) if k == 0 else f"{c}*z^{k}" if k > 1 else f"{c}*z")
        return f"[{' + '.join(parts)} mod Phi_{self.order}(z)]"

    __repr__ = __str__


# -------------------- substitution --------------------
@dataclass(frozen=True)
class RootOfUnity:
    order: int

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"root of unity order must be at least 2, got {self.order}")


def _exact_power(value: Fraction, p: Fraction) -> Fraction:
    if value == 0:
        if p <= 0:
            raise ZeroDenominatorError("zero denominator")
        return Fraction(0)
    if p.denominator == 1:
        return value ** int(p)
    d = p.denominator
    sign = 1
    num, den = value.numerator, value.denominator
    if num < 0:
        if d % 2 == 0:
            raise NoExactRootError(f"no real {d}-th root of {value}")
        sign, num = -1, -num
    rn, ok_n = integer_nthroot(num, d)
    rd, ok_d = integer_nthroot(den, d)
    if not (ok_n and ok_d):
        raise NoExactRootError(f"{value} has no exact rational {d}-th root")
    return Fraction(sign * rn, rd) ** p.numerator


def _substitute_numeric(s: Scalar, values: dict[int, Fraction]) -> Scalar:
    space = s.space
    out: dict = {}
    for e, c in s.terms.items():
        coeff = c
        e2 = list(e)
        for slot, v in values.items():
            if e[slot]:
                coeff *= _exact_power(v, Fraction(e[slot], space.exp_denom))
                e2[slot] = 0
        key = tuple(e2)
        out[key] = out.get(key, 0) + coeff
    return Scalar(space, out)


def _scalar_to_cyc(s: Scalar, order: int) -> CycScalar:
    space = s.space
    slot, denom = space.a_slot, space.exp_denom
    coeffs: dict[int, Scalar] = {}
    for e, c in s.terms.items():
        if e[slot] % denom:
            raise NoExactRootError(f"fractional power of a in {s} at a root of unity")
        k = (e[slot] // denom) % order
        e2 = list(e)
        e2[slot] = 0
        coeffs[k] = coeffs.get(k, space.zero()) + Scalar(space, {tuple(e2): c})
    poly = [coeffs.get(k, space.zero()) for k in range(order)]
    return CycScalar(space, order, poly)


def to_cyc(x, order: int) -> CycScalar:
    """Lift a Scalar or Ratio to the cyclotomic quotient a = zeta_order."""
    if isinstance(x, Scalar):
        return _scalar_to_cyc(x, order)
    den = _scalar_to_cyc(x.den, order)
    if den.is_zero():
        raise PoleError("pole at assignment", witness=x)
    return _scalar_to_cyc(x.num, order) * den.inverse()


def substitute(x, assignment: dict):
    """Evaluate x under assignment (parameter name -> rational, "sym" or RootOfUnity).

    Returns a Fraction when nothing symbolic remains, a CycScalar when a is sent
    to a root of unity, and a Ratio otherwise.
    """
    if isinstance(x, Scalar):
        x = Ratio.of(x.space, x)
    space = x.space
    values: dict[int, Fraction] = {}
    root = None
    for name, v in assignment.items():
        slot = space.slot(name)
        if isinstance(v, RootOfUnity):
            if slot != space.a_slot:
                raise ValueError(f"roots of unity are only allowed for a, not {name}")
            root = v.order
        elif v == "sym" or v is None:
            continue
        else:
            values[slot] = Fraction(v)
    num = _substitute_numeric(x.num, values)
    den = _substitute_numeric(x.den, values)
    if den.is_zero():
        raise PoleError("pole at assignment", witness=x)
    if root is not None:
        d = _scalar_to_cyc(den, root)
        if d.is_zero():
            raise PoleError("pole at assignment", witness=x)
        return _scalar_to_cyc(num, root) * d.inverse()
    r = Ratio(num, den)
    if r.num.is_constant() and r.den.is_constant():
        return r.num.constant_value() / r.den.constant_value()
    return r
