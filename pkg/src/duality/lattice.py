from __future__ import annotations
from fractions import Fraction
from functools import lru_cache
from math import comb

import sympy

from ..ring import ParamSpace, Ratio, to_cyc

Exps = tuple[int, ...]


@lru_cache(maxsize=None)
def faulhaber(p: int) -> tuple[Fraction, ...]:
    """Coefficients, lowest degree first, of sum_{t<n} t^p as a polynomial in n."""
    t, n = sympy.symbols("t n", integer=True)
    expr = sympy.expand(sympy.summation(t ** p, (t, 0, n - 1)))
    coeffs = sympy.Poly(expr, n).all_coeffs()
    return tuple(Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(coeffs))


def _geometric_antidifference(lam: Ratio, p: int) -> list[Ratio]:
    """A of degree p with lam A(t+1) - A(t) = t^p, lowest coefficient first."""
    space = lam.space
    alpha = [Ratio.zero(space)] * (p + 1)
    inv = (lam - 1).inverse()
    for j in range(p, -1, -1):
        acc = Ratio.one(space) if j == p else Ratio.zero(space)
        for i in range(j + 1, p + 1):
            if not alpha[i].is_zero():
                acc = acc - lam * alpha[i] * comb(i, j)
        alpha[j] = acc * inv
    return alpha


def _poly_add(out: dict, exps: Exps, c: Ratio):
    v = out.get(exps)
    v = c if v is None else v + c
    if v.is_zero():
        out.pop(exps, None)
    else:
        out[exps] = v


class LatticeFn:
    """Exponential polynomial on Z^nvars: sum over characters c of poly_c(m) * prod_k c_k^{m_k}.

    terms maps a character (tuple of monomial Ratios) to {exponent tuple: Ratio}.
    """
    __slots__ = ("space", "nvars", "terms")

    def __init__(self, space: ParamSpace, nvars: int, terms: dict | None = None):
        self.space = space
        self.nvars = nvars
        self.terms = {}
        for char, poly in (terms or {}).items():
            char = tuple(Ratio.of(space, x) for x in char)
            if len(char) != nvars:
                raise ValueError(f"character {char} has {len(char)} entries, expected {nvars}")
            for e, c in poly.items():
                c = Ratio.of(space, c)
                if not c.is_zero():
                    _poly_add(self.terms.setdefault(char, {}), tuple(e), c)
            if not self.terms.get(char, True):
                del self.terms[char]

    @classmethod
    def _raw(cls, space, nvars, terms) -> LatticeFn:
        obj = cls.__new__(cls)
        obj.space, obj.nvars, obj.terms = space, nvars, terms
        return obj

    # -------------------- Constructors --------------------
    @classmethod
    def zero(cls, space: ParamSpace, nvars: int) -> LatticeFn:
        return cls._raw(space, nvars, {})

    @classmethod
    def const(cls, space: ParamSpace, nvars: int, c=1) -> LatticeFn:
        return cls(space, nvars, {(1,) * nvars: {(0,) * nvars: c}})

    @classmethod
    def character(cls, space: ParamSpace, chars, c=1) -> LatticeFn:
        chars = tuple(chars)
        return cls(space, len(chars), {chars: {(0,) * len(chars): c}})

    @classmethod
    def coordinate(cls, space: ParamSpace, nvars: int, var: int) -> LatticeFn:
        """m -> m_var, var 0-based."""
        e = tuple(1 if k == var else 0 for k in range(nvars))
        return cls(space, nvars, {(1,) * nvars: {e: 1}})

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        if len(self.terms) != 1:
            return False
        char, poly = next(iter(self.terms.items()))
        return all(x.is_one() for x in char) and list(poly) == [(0,) * self.nvars]

    def constant_value(self) -> Ratio:
        if not self.is_constant():
            raise ValueError(f"{self} depends on the lattice point")
        if not self.terms:
            return Ratio.zero(self.space)
        return next(iter(next(iter(self.terms.values())).values()))

    def leading(self) -> tuple[tuple, Exps, Ratio]:
        char = min(self.terms, key=str)
        poly = self.terms[char]
        e = max(poly)
        return char, e, poly[e]

    def coefficient(self, char, exps: Exps) -> Ratio:
        return self.terms.get(tuple(char), {}).get(tuple(exps), Ratio.zero(self.space))

    # -------------------- Arithmetic --------------------
    def _check(self, other: LatticeFn):
        if other.nvars != self.nvars:
            raise ValueError(f"lattice functions on Z^{self.nvars} and Z^{other.nvars}")

    def __add__(self, other: LatticeFn) -> LatticeFn:
        self._check(other)
        out = {char: dict(poly) for char, poly in self.terms.items()}
        for char, poly in other.terms.items():
            target = out.setdefault(char, {})
            for e, c in poly.items():
                _poly_add(target, e, c)
            if not target:
                del out[char]
        return LatticeFn._raw(self.space, self.nvars, out)

    def __neg__(self) -> LatticeFn:
        return LatticeFn._raw(self.space, self.nvars,
                              {ch: {e: -c for e, c in poly.items()} for ch, poly in self.terms.items()})

    def __sub__(self, other: LatticeFn) -> LatticeFn:
        return self + (-other)

    def scale(self, c) -> LatticeFn:
        c = Ratio.of(self.space, c)
        if c.is_zero():
            return LatticeFn.zero(self.space, self.nvars)
        return LatticeFn._raw(self.space, self.nvars,
                              {ch: {e: x * c for e, x in poly.items()} for ch, poly in self.terms.items()})

    def __mul__(self, other) -> LatticeFn:
        if not isinstance(other, LatticeFn):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for c1, p1 in self.terms.items():
            for c2, p2 in other.terms.items():
                char = tuple(x * y for x, y in zip(c1, c2))
                target = out.setdefault(char, {})
                for e1, x in p1.items():
                    for e2, y in p2.items():
                        _poly_add(target, tuple(i + j for i, j in zip(e1, e2)), x * y)
                if not target:
                    del out[char]
        return LatticeFn._raw(self.space, self.nvars, out)

    __rmul__ = scale

    def times_character(self, chars) -> LatticeFn:
        return self * LatticeFn.character(self.space, chars)

    # -------------------- Evaluation and substitution --------------------
    def evaluate(self, m) -> Ratio:
        m = tuple(m)
        if len(m) != self.nvars:
            raise ValueError(f"lattice point {m} has {len(m)} entries, expected {self.nvars}")
        total = Ratio.zero(self.space)
        for char, poly in self.terms.items():
            weight = Ratio.one(self.space)
            for c, k in zip(char, m):
                if k:
                    weight = weight * c ** k
            acc = Ratio.zero(self.space)
            for e, c in poly.items():
                mono = 1
                for k, p in zip(m, e):
                    mono *= k ** p
                if mono:
                    acc = acc + c * mono
            total = total + weight * acc
        return total

    def affine(self, u, s: int = 1) -> LatticeFn:
        """m -> f(u + s m) for an integer shift u and integer scale s."""
        out: dict = {}
        for char, poly in self.terms.items():
            weight = Ratio.one(self.space)
            for c, k in zip(char, u):
                if k:
                    weight = weight * c ** k
            new_char = tuple(c ** s for c in char) if s != 1 else char
            target = out.setdefault(new_char, {})
            for e, c in poly.items():
                expanded = {(0,) * self.nvars: Ratio.one(self.space)}
                for var, (p, k) in enumerate(zip(e, u)):
                    if not p:
                        continue
                    # (k + s m)^p
                    factor = {i: comb(p, i) * k ** (p - i) * s ** i for i in range(p + 1) if comb(p, i) * k ** (p - i)}
                    nxt: dict = {}
                    for ex, x in expanded.items():
                        for i, f in factor.items():
                            e2 = list(ex)
                            e2[var] += i
                            _poly_add(nxt, tuple(e2), x * f)
                    expanded = nxt
                for ex, x in expanded.items():
                    _poly_add(target, ex, x * c * weight)
            if not target:
                del out[new_char]
        return LatticeFn._raw(self.space, self.nvars, out)

    def shift(self, u) -> LatticeFn:
        if not any(u):
            return self
        return self.affine(u, 1)

    def embed(self, nvars: int, positions) -> LatticeFn:
        """Variable k becomes variable positions[k] of Z^nvars; the rest are ignored."""
        one = Ratio.one(self.space)
        out: dict = {}
        for char, poly in self.terms.items():
            new_char = [one] * nvars
            for k, p in enumerate(positions):
                new_char[p] = char[k]
            target = out.setdefault(tuple(new_char), {})
            for e, c in poly.items():
                e2 = [0] * nvars
                for k, p in enumerate(positions):
                    e2[p] = e[k]
                _poly_add(target, tuple(e2), c)
            if not target:
                del out[tuple(new_char)]
        return LatticeFn._raw(self.space, nvars, out)

    def tensor(self, other: LatticeFn) -> LatticeFn:
        """(m, m') -> f(m) g(m') on Z^{nvars + other.nvars}."""
        d = self.nvars + other.nvars
        left = self.embed(d, range(self.nvars))
        right = other.embed(d, range(self.nvars, d))
        return left * right

    def block_sum(self) -> LatticeFn:
        """(m, m') -> f(m + m') on Z^{2 nvars}."""
        n = self.nvars
        out = LatticeFn.zero(self.space, 2 * n)
        for char, poly in self.terms.items():
            chi = LatticeFn.character(self.space, char + char)
            acc = LatticeFn.zero(self.space, 2 * n)
            for e, c in poly.items():
                term = LatticeFn.const(self.space, 2 * n, c)
                for var, p in enumerate(e):
                    if p:
                        lin = LatticeFn.coordinate(self.space, 2 * n, var) + \
                            LatticeFn.coordinate(self.space, 2 * n, n + var)
                        for _ in range(p):
                            term = term * lin
                acc = acc + term
            out = out + acc * chi
        return out

    def partial_sum(self) -> LatticeFn:
        """n -> sum_{t<n} f(t) for a function of one variable, valid for every integer n."""
        if self.nvars != 1:
            raise ValueError(f"partial sums need one variable, got {self.nvars}")
        one = Ratio.one(self.space)
        out = LatticeFn.zero(self.space, 1)
        for (lam,), poly in self.terms.items():
            for (p,), c in poly.items():
                if lam.is_one():
                    coeffs = faulhaber(p)
                    out = out + LatticeFn._raw(self.space, 1, {(one,): {(i,): Ratio.of(self.space, x) * c
                                                                        for i, x in enumerate(coeffs) if x}})
                    continue
                A = _geometric_antidifference(lam, p)
                grown = {(i,): x * c for i, x in enumerate(A) if not x.is_zero()}
                out = out + LatticeFn._raw(self.space, 1, {(lam,): grown})
                if not A[0].is_zero():
                    out = out + LatticeFn._raw(self.space, 1, {(one,): {(0,): -A[0] * c}})
        return out

    # -------------------- Roots of unity --------------------
    def at_root(self, order: int) -> list:
        """Coefficients and character entries lifted to a = zeta_order; raises PoleError on a pole."""
        out = []
        for char, poly in self.terms.items():
            out.extend(to_cyc(c, order) for c in char)
            out.extend(to_cyc(c, order) for c in poly.values())
        return out

    def vanishes_at_root(self, order: int) -> bool:
        """Every polynomial coefficient vanishes at a = zeta_order (sufficient for the function to vanish)."""
        return all(to_cyc(c, order).is_zero() for poly in self.terms.values() for c in poly.values())

    # -------------------- Comparison --------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeFn):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for char in sorted(self.terms, key=str):
            poly = self.terms[char]
            body = " + ".join(
                f"{c}" + "".join(f"*m{k + 1}^{p}" if p > 1 else f"*m{k + 1}" for k, p in enumerate(e) if p)
                for e, c in sorted(poly.items()))
            if all(x.is_one() for x in char):
                parts.append(f"[{body}]")
            else:
                parts.append(f"[{body}]*<{', '.join(str(x) for x in char)}>^m")
        return " + ".join(parts)

    __repr__ = __str__
