from __future__ import annotations
from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.rings import ring

from .params import ParamSpace
from ..utils.errors import ZeroDenominatorError


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


class Scalar:
    """Laurent polynomial over Q in the parameters of a ParamSpace.

    terms maps scaled exponent vectors to nonzero Fractions.
    """
    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: ParamSpace, terms: dict | None = None):
        self.space = space
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, space, terms):
        obj = cls.__new__(cls)
        obj.space = space
        obj.terms = terms
        obj._hash = None
        return obj

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.space != self.space:
                raise ValueError("scalars from different parameter spaces")
            return other
        return self.space.const(_frac(other))

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0,) * self.space.nparams, Fraction(0))

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(col) for col in zip(*self.terms))

    def degree_in(self, name: str) -> Fraction:
        slot = self.space.slot(name)
        return Fraction(max(e[slot] for e in self.terms), self.space.exp_denom)

    def involves(self, slot: int) -> bool:
        return any(e[slot] for e in self.terms)

    # -------------------- Arithmetic --------------------
    def __add__(self, other) -> Scalar:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Scalar._raw(self.space, out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Scalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Scalar:
        return self._coerce(other) - self

    def __mul__(self, other) -> Scalar:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Scalar._raw(self.space, {})
            return Scalar._raw(self.space, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Scalar._raw(self.space, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        """Exact division by a nonzero constant or a monomial."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDenominatorError("zero denominator")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDenominatorError("zero denominator")
        if not other.is_monomial():
            raise ValueError(f"Scalar division needs a monomial divisor, got {other}; use Ratio")
        return self * other.inverse_monomial()

    def inverse_monomial(self) -> Scalar:
        e, c = next(iter(self.terms.items()))
        if len(self.terms) != 1:
            raise ValueError(f"{self} has no Laurent inverse")
        return Scalar._raw(self.space, {tuple(-x for x in e): 1 / c})

    def __pow__(self, k) -> Scalar:
        k = Fraction(k)
        if self.is_monomial():
            e, c = next(iter(self.terms.items()))
            scaled = [x * k for x in e]
            if any(s.denominator != 1 for s in scaled):
                raise ValueError(f"{self}^{k} leaves the exponent lattice 1/{self.space.exp_denom}")
            if k.denominator != 1 and c != 1:
                raise ValueError(f"fractional power of a monomial with coefficient {c}")
            coeff = c ** int(k) if k.denominator == 1 else Fraction(1)
            return Scalar._raw(self.space, {tuple(int(s) for s in scaled): coeff})
        if k.denominator != 1 or k < 0:
            raise ValueError(f"only nonnegative integer powers of the polynomial {self}")
        out = self.space.one()
        base = self
        n = int(k)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, exps) -> Scalar:
        return Scalar._raw(self.space, {tuple(x + s for x, s in zip(e, exps)): c for e, c in self.terms.items()})

    def reflect(self, slot: int) -> Scalar:
        """Replace the parameter in slot by its inverse."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[slot] = -e2[slot]
            out[tuple(e2)] = c
        return Scalar._raw(self.space, out)

    # -------------------- Comparison --------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Ratio):
            return other == self
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -------------------- Printing --------------------
    def _monomial_str(self, e) -> str:
        parts = []
        for name, x in zip(self.space.params, e):
            if x == 0:
                continue
            p = Fraction(x, self.space.exp_denom)
            if p == 1:
                parts.append(name)
            elif p.denominator == 1:
                parts.append(f"{name}^{p.numerator}")
            else:
                parts.append(f"{name}^({p})")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = self._monomial_str(e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out += (sign if out or sign == "-" else "") + body
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"


# -------------------- sympy bridge --------------------
@lru_cache(maxsize=None)
def _poly_ring(nvars: int):
    R, *_ = ring(",".join(f"t{i}" for i in range(nvars)), QQ)
    return R


def _to_poly(R, s: Scalar):
    return R({e: QQ(c.numerator, c.denominator) for e, c in s.terms.items()})


def _from_poly(space: ParamSpace, poly) -> Scalar:
    terms = {}
    for monom, coeff in poly.items():
        terms[tuple(int(x) for x in monom)] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return Scalar._raw(space, terms)


def _canonical(num: Scalar, den: Scalar) -> tuple[Scalar, Scalar]:
    space = num.space
    if den.is_zero():
        raise ZeroDenominatorError("zero denominator")
    if num.is_zero():
        return num, space.one()
    if den.is_monomial():
        return num * den.inverse_monomial(), space.one()
    low = tuple(min(x, y) for x, y in zip(num.min_exponents(), den.min_exponents()))
    neg = tuple(-x for x in low)
    R = _poly_ring(space.nparams)
    _, n1, d1 = _to_poly(R, num.shifted(neg)).cofactors(_to_poly(R, den.shifted(neg)))
    n1, d1 = _from_poly(space, n1), _from_poly(space, d1)
    content = tuple(-x for x in d1.min_exponents())
    n1, d1 = n1.shifted(content), d1.shifted(content)
    _, lead = d1.leading()
    n1, d1 = n1 * (1 / lead), d1 * (1 / lead)
    if d1.is_monomial():
        return n1 * d1.inverse_monomial(), space.one()
    return n1, d1


class Ratio:
    """Quotient of Scalars in canonical form.

    The denominator is 1 or a polynomial with no monomial factor whose
    lex-greatest coefficient is 1, coprime to the numerator.
    """
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, Ratio) and den is None:
            self.num, self.den, self._hash = num.num, num.den, None
            return
        if not isinstance(num, Scalar):
            raise TypeError("Ratio numerator must be a Scalar")
        if den is None:
            den = num.space.one()
        elif not isinstance(den, Scalar):
            den = num.space.const(_frac(den))
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def of(cls, space: ParamSpace, value) -> Ratio:
        if isinstance(value, Ratio):
            return value
        if isinstance(value, Scalar):
            return cls._raw(value, space.one())
        return cls._raw(space.const(_frac(value)), space.one())

    @classmethod
    def zero(cls, space: ParamSpace) -> Ratio:
        return cls._raw(space.zero(), space.one())

    @classmethod
    def one(cls, space: ParamSpace) -> Ratio:
        return cls._raw(space.one(), space.one())

    @property
    def space(self) -> ParamSpace:
        return self.num.space

    def _coerce(self, other) -> Ratio:
        if isinstance(other, Ratio):
            return other
        return Ratio.of(self.space, other)

    def _den_one(self) -> bool:
        return len(self.den.terms) == 1 and not any(next(iter(self.den.terms))) and next(iter(self.den.terms.values())) == 1

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self._den_one() and self.num.is_constant() and self.num.constant_value() == 1

    def is_laurent(self) -> bool:
        return self._den_one()

    def is_monomial(self) -> bool:
        return self._den_one() and self.num.is_monomial()

    def involves(self, slot: int) -> bool:
        return self.num.involves(slot) or self.den.involves(slot)

    # -------------------- Arithmetic --------------------
    def __add__(self, other) -> Ratio:
        other = self._coerce(other)
        if self._den_one() and other._den_one():
            return Ratio._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return Ratio(self.num + other.num, self.den)
        return Ratio(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> Ratio:
        return Ratio._raw(-self.num, self.den)

    def __sub__(self, other) -> Ratio:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Ratio:
        return self._coerce(other) - self

    def __mul__(self, other) -> Ratio:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Ratio.zero(self.space)
            return Ratio._raw(self.num * other, self.den)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Ratio.zero(self.space)
        if self._den_one() and other._den_one():
            return Ratio._raw(self.num * other.num, self.den)
        if other._den_one() and other.num.is_monomial():
            return Ratio._raw(self.num * other.num, self.den)
        if self._den_one() and self.num.is_monomial():
            return Ratio._raw(self.num * other.num, other.den)
        return Ratio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> Ratio:
        if self.is_zero():
            raise ZeroDenominatorError("zero denominator")
        return Ratio(self.den, self.num)

    def __truediv__(self, other) -> Ratio:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> Ratio:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Ratio:
        if not isinstance(k, int):
            if self._den_one() and self.num.is_monomial():
                return Ratio._raw(self.num ** k, self.den)
            raise ValueError(f"fractional power of non-monomial {self}")
        if k < 0:
            return self.inverse() ** (-k)
        return Ratio(self.num ** k, self.den ** k) if not self._den_one() else Ratio._raw(self.num ** k, self.den)

    def reflect(self, slot: int) -> Ratio:
        return Ratio(self.num.reflect(slot), self.den.reflect(slot))

    # -------------------- Comparison --------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Ratio):
            return self.num.terms == other.num.terms and self.den.terms == other.den.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Ratio.of(self.space, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"Ratio{self}"

    @classmethod
    def from_string(cls, space: ParamSpace, text: str) -> Ratio:
        """Parse the canonical string form (or any rational expression in the parameters)."""
        import sympy
        names = {name: sympy.Symbol(name) for name in space.params}
        ts = sympy.symbols(f"t0:{space.nparams}", positive=True)
        try:
            expr = sympy.sympify(text, locals=names)
        except (sympy.SympifyError, SyntaxError) as e:
            raise ValueError(f"cannot parse {text!r} as a rational function") from e
        expr = expr.subs({names[p]: ts[k] ** space.exp_denom for k, p in enumerate(space.params)})
        num, den = sympy.fraction(sympy.together(expr))
        return cls(_from_sympy(space, num, ts), _from_sympy(space, den, ts))


def _from_sympy(space: ParamSpace, expr, ts) -> Scalar:
    import sympy
    poly = sympy.Poly(sympy.expand(expr), *ts)
    terms = {}
    for monom, coeff in poly.terms():
        c = sympy.Rational(coeff)
        terms[tuple(int(x) for x in monom)] = Fraction(int(c.p), int(c.q))
    return Scalar(space, terms)
