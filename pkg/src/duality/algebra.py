from __future__ import annotations
from dataclasses import dataclass

from ..ncalg import Presentation, preset_factored, x_commutation, y_commutation
from ..ring import ParamSpace, Ratio
from ..utils import log
from ..utils.constants import DEFAULT_DEGREE
from .lattice import LatticeFn

Word = tuple[int, ...]
Key = tuple[Word, Word]            # (X part, Y part) of a basis monomial X^a z^m Y^c
Mono = tuple                       # (X word, s, u, Y word) = X^a z^(u + s m) Y^c
Bounds = tuple[int, int, int, int]  # X and Y height of leg 1, then of leg 2


def _acc(out: dict, key, val):
    cur = out.get(key)
    val = val if cur is None else cur + val
    if val.is_zero():
        out.pop(key, None)
    else:
        out[key] = val


@dataclass(frozen=True)
class GaussFactors:
    """W = L M U for W_i^j = sum_l Y_i^l (x) X'_l^j, entries {(Y word, X' word): Ratio}."""
    L: dict
    M: dict
    U: dict


class FactoredAlgebra:
    """Product and coproduct of the basis X^a z^m Y^c of the factored algebra, exact up to height D.

    The lattice exponent m stays symbolic: coefficients are LatticeFn in m.
    """

    def __init__(self, space: ParamSpace, degree: int = DEFAULT_DEGREE, pres: Presentation | None = None):
        if degree < 1:
            raise ValueError(f"truncation degree must be at least 1, got {degree}")
        self.space = space
        self.n = space.n
        self.degree = degree
        self.pres = pres or preset_factored(space, "full")
        self.alphabet = self.pres.alphabet
        self.system = self.pres.system
        self.xs = tuple(self.alphabet.positions("X"))
        self.ys = tuple(self.alphabet.positions("Y"))
        self.one = Ratio.one(space)
        self.origin = (0,) * self.n
        self._nf: dict = {}
        self._words: dict = {}
        self._gamma: dict = {}
        self._gamma_prime: dict = {}
        self._leg: dict = {}
        self._gauss: dict = {}
        self._delta: dict = {}

    # -------------------- Words --------------------
    def height(self, word: Word) -> int:
        return self.alphabet.height(word)

    def nf(self, word: Word) -> tuple:
        """Normal form of a pure X or pure Y word as ((word, coefficient), ...)."""
        hit = self._nf.get(word)
        if hit is None:
            if len(word) < 2:
                hit = ((word, self.one),)
            else:
                hit = tuple(self.system.nf_word(word).terms.items())
            self._nf[word] = hit
        return hit

    def words(self, kind: str, h: int) -> list[Word]:
        """Normal words in the X (or Y) letters of height exactly h."""
        hit = self._words.get((kind, h))
        if hit is None:
            letters = list(self.xs if kind == "X" else self.ys)
            hit = []
            for length in range(h + 1):
                hit += [w for w in self.system.normal_words(length, letters) if self.height(w) == h]
            self._words[(kind, h)] = hit
        return hit

    def keys(self, xmax: int, ymax: int, total: int | None = None) -> list[Key]:
        total = self.degree if total is None else total
        out = []
        for hx in range(min(xmax, total) + 1):
            for hy in range(min(ymax, total - hx) + 1):
                out += [(xw, yw) for xw in self.words("X", hx) for yw in self.words("Y", hy)]
        return out

    def key_str(self, key: Key) -> str:
        xw, yw = key
        parts = [self.alphabet.word_str(xw) if xw else "", "z^m", self.alphabet.word_str(yw) if yw else ""]
        return "*".join(p for p in parts if p)

    # -------------------- Commutation with the lattice --------------------
    def gamma(self, xw: Word) -> tuple[Ratio, ...]:
        """c_k with z_k X^w = c_k X^w z_k."""
        hit = self._gamma.get(xw)
        if hit is None:
            out = [self.one] * self.n
            for p in xw:
                i, j = self.alphabet[p].index
                for k in range(self.n):
                    out[k] = out[k] * Ratio.of(self.space, x_commutation(self.space, k + 1, i, j))
            hit = self._gamma[xw] = tuple(out)
        return hit

    def gamma_prime(self, yw: Word) -> tuple[Ratio, ...]:
        """c_k with Y^w z_k = c_k z_k Y^w."""
        hit = self._gamma_prime.get(yw)
        if hit is None:
            out = [self.one] * self.n
            for p in yw:
                i, j = self.alphabet[p].index
                for k in range(self.n):
                    out[k] = out[k] / Ratio.of(self.space, y_commutation(self.space, k + 1, i, j))
            hit = self._gamma_prime[yw] = tuple(out)
        return hit

    def omega(self, k: int, w: tuple[Word, Word]) -> Ratio:
        """(z_k z'_k)^-1 w (z_k z'_k) = omega w for w = Y^yw (x) X'^xw."""
        yw, xw = w
        return self.gamma_prime(yw)[k - 1] / self.gamma(xw)[k - 1]

    def _power(self, chars: tuple[Ratio, ...], u: tuple[int, ...]) -> Ratio:
        out = self.one
        for c, e in zip(chars, u):
            if e:
                out = out * c ** e
        return out

    def unit(self, k: int, sign: int = 1) -> tuple[int, ...]:
        return tuple(sign if l == k - 1 else 0 for l in range(self.n))

    # -------------------- One leg --------------------
    def leg_mul(self, a: Mono, b: Mono, xmax: int, ymax: int) -> dict:
        """Normal-ordered product of two leg monomials as {Mono: LatticeFn}; empty past the bounds."""
        xa, sa, ua, ya = a
        xb, sb, ub, yb = b
        if self.height(xa) + self.height(xb) > xmax or self.height(ya) + self.height(yb) > ymax:
            return {}
        hit = self._leg.get((a, b))
        if hit is not None:
            return hit
        g, gp = self.gamma(xb), self.gamma_prime(ya)
        c = self._power(g, ua) * self._power(gp, ub)
        chars = tuple(x ** sa * y ** sb for x, y in zip(g, gp))
        base = LatticeFn.character(self.space, chars, c)
        u = tuple(p + q for p, q in zip(ua, ub))
        out = {}
        for wx, cx in self.nf(xa + xb):
            for wy, cy in self.nf(ya + yb):
                _acc(out, (wx, sa + sb, u, wy), base.scale(cx * cy))
        self._leg[(a, b)] = out
        return out

    def chain(self, monos: list, xmax: int, ymax: int) -> dict:
        out = {monos[0]: LatticeFn.const(self.space, self.n)}
        for b in monos[1:]:
            nxt: dict = {}
            for a, c in out.items():
                for m, f in self.leg_mul(a, b, xmax, ymax).items():
                    _acc(nxt, m, c * f)
            out = nxt
        return out

    def sym_mul(self, A: dict, B: dict, bounds: Bounds) -> dict:
        """Product of two-leg tensors {(Mono, Mono): LatticeFn}, truncated by bounds."""
        x1, y1, x2, y2 = bounds
        out: dict = {}
        for (a1, a2), ca in A.items():
            for (b1, b2), cb in B.items():
                left = self.leg_mul(a1, b1, x1, y1)
                if not left:
                    continue
                right = self.leg_mul(a2, b2, x2, y2)
                if not right:
                    continue
                c = ca * cb
                for m1, f1 in left.items():
                    cf = c * f1
                    for m2, f2 in right.items():
                        _acc(out, (m1, m2), cf * f2)
        return out

    # -------------------- Y (x) X' algebra --------------------
    def w_mul(self, A: dict, B: dict, ymax: int, xmax: int) -> dict:
        out: dict = {}
        for (ya, xa), ca in A.items():
            hy, hx = self.height(ya), self.height(xa)
            for (yb, xb), cb in B.items():
                if hy + self.height(yb) > ymax or hx + self.height(xb) > xmax:
                    continue
                c = ca * cb
                for wy, cy in self.nf(ya + yb):
                    for wx, cx in self.nf(xa + xb):
                        _acc(out, (wy, wx), c * (cy * cx))
        return out

    def _w_inverse(self, A: dict, ymax: int, xmax: int) -> dict:
        empty = ((), ())
        if A.get(empty) != self.one:
            raise ValueError("diagonal Gauss factor does not start with 1")
        neg = {w: -c for w, c in A.items() if w != empty}
        inv = {empty: self.one}
        power = dict(inv)
        while True:
            power = self.w_mul(power, neg, ymax, xmax)
            if not power:
                return inv
            for w, c in power.items():
                _acc(inv, w, c)

    def gauss(self, ymax: int, xmax: int) -> GaussFactors:
        """LMU decomposition of W = Y X' truncated at leg-1 Y height ymax and leg-2 X height xmax."""
        hit = self._gauss.get((ymax, xmax))
        if hit is not None:
            return hit
        n, alpha = self.n, self.alphabet
        A = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                entry = {}
                for l in range(max(i, j), n + 1):
                    yw = (alpha.find("Y", i, l),) if l > i else ()
                    xw = (alpha.find("X", l, j),) if l > j else ()
                    if self.height(yw) <= ymax and self.height(xw) <= xmax:
                        entry[(yw, xw)] = self.one
                A[(i, j)] = entry
        L, M, U = {}, {}, {}
        for k in range(1, n + 1):
            M[k] = A[(k, k)]
            Minv = self._w_inverse(M[k], ymax, xmax)
            for i in range(k + 1, n + 1):
                L[(i, k)] = self.w_mul(A[(i, k)], Minv, ymax, xmax)
                U[(k, i)] = self.w_mul(Minv, A[(k, i)], ymax, xmax)
            for i in range(k + 1, n + 1):
                for j in range(k + 1, n + 1):
                    entry = dict(A[(i, j)])
                    for w, c in self.w_mul(L[(i, k)], A[(k, j)], ymax, xmax).items():
                        _acc(entry, w, -c)
                    A[(i, j)] = entry
        hit = self._gauss[(ymax, xmax)] = GaussFactors(L, M, U)
        return hit

    # -------------------- Coproducts --------------------
    def delta_X(self, p: int, bounds: Bounds) -> dict:
        """D(X_i^j) = sum_l X_i^l z_l L_l^j z_j^-1, L from the Gauss decomposition of Y (x) X'."""
        hit = self._delta.get(("X", p, bounds))
        if hit is not None:
            return hit
        x1, y1, x2, y2 = bounds
        i, j = self.alphabet[p].index
        L = self.gauss(y1, x2).L
        zero = self.origin
        out: dict = {}
        for l in range(j, i + 1):
            entry = L[(l, j)] if l > j else {((), ()): self.one}
            head = ((self.alphabet.find("X", i, l),) if l < i else (), 0, self.unit(l), ())
            for (yw, xw), c in entry.items():
                legs = self.chain([head, ((), 0, zero, yw), ((), 0, self.unit(j, -1), ())], x1, y1)
                for m1, f in legs.items():
                    _acc(out, (m1, (xw, 0, zero, ())), f.scale(c))
        self._delta[("X", p, bounds)] = out
        return out

    def delta_Y(self, p: int, bounds: Bounds) -> dict:
        """D(Y_i^j) = sum_l z'_i^-1 U_i^l z'_l Y'_l^j."""
        hit = self._delta.get(("Y", p, bounds))
        if hit is not None:
            return hit
        x1, y1, x2, y2 = bounds
        i, j = self.alphabet[p].index
        U = self.gauss(y1, x2).U
        zero = self.origin
        out: dict = {}
        for l in range(i, j + 1):
            entry = U[(i, l)] if l > i else {((), ()): self.one}
            tail = ((), 0, self.unit(l), (self.alphabet.find("Y", l, j),) if l < j else ())
            for (yw, xw), c in entry.items():
                legs = self.chain([((), 0, self.unit(i, -1), ()), (xw, 0, zero, ()), tail], x2, y2)
                for m2, f in legs.items():
                    _acc(out, (((), 0, zero, yw), m2), f.scale(c))
        self._delta[("Y", p, bounds)] = out
        return out

    def _lattice_series(self, k: int, S: dict, ymax: int, xmax: int) -> dict:
        """sum_r G_r(n) with G_0 = 1 and G_r(n) = sum_{t<n} tau^t(S) G_{r-1}(t), as 1-variable LatticeFn."""
        empty = ((), ())
        total = {empty: LatticeFn.const(self.space, 1)}
        prev = dict(total)
        while prev:
            nxt: dict = {}
            for w, s in S.items():
                lam = self.omega(k, w)
                for u, f in prev.items():
                    if self.height(w[0]) + self.height(u[0]) > ymax or \
                            self.height(w[1]) + self.height(u[1]) > xmax:
                        continue
                    summed = f.times_character((lam,)).partial_sum().scale(s)
                    for wy, cy in self.nf(w[0] + u[0]):
                        for wx, cx in self.nf(w[1] + u[1]):
                            _acc(nxt, (wy, wx), summed.scale(cy * cx))
            for w, f in nxt.items():
                _acc(total, w, f)
            prev = nxt
        return total

    def delta_lattice(self, bounds: Bounds) -> dict:
        """D(z^m) = g^m A_1 ... A_N with g_k = z_k z'_k and A_k the twisted power series of D(z_k)."""
        hit = self._delta.get(("z", bounds))
        if hit is not None:
            return hit
        x1, y1, x2, y2 = bounds
        factors = self.gauss(y1, x2)
        empty = ((), ())
        n = self.n
        prod = None
        for k in range(1, n + 1):
            S = {w: c / self.gamma(w[1])[k - 1] for w, c in factors.M[k].items() if w != empty}
            A = {}
            for w, f in self._lattice_series(k, S, y1, x2).items():
                twist = tuple(self.omega(l + 1, w) if l + 1 > k else self.one for l in range(n))
                A[w] = f.embed(n, (k - 1,)).times_character(twist)
            prod = A if prod is None else self.w_mul(prod, A, y1, x2)
        zero = self.origin
        out: dict = {}
        for (yw, xw), f in prod.items():
            leg1 = ((), 1, zero, yw)
            for m2, g in self.leg_mul(((), 1, zero, ()), (xw, 0, zero, ()), x2, y2).items():
                _acc(out, (leg1, m2), f * g)
        self._delta[("z", bounds)] = out
        return out

    def coproduct_basis(self, key: Key, bounds: Bounds) -> dict:
        """D(X^a z^m Y^c) = D(X)...D(z^m)...D(Y) as {(Mono, Mono): LatticeFn in m}."""
        hit = self._delta.get(("basis", key, bounds))
        if hit is not None:
            return hit
        xw, yw = key
        out = self.delta_lattice(bounds)
        for p in reversed(xw):
            out = self.sym_mul(self.delta_X(p, bounds), out, bounds)
        for p in yw:
            out = self.sym_mul(out, self.delta_Y(p, bounds), bounds)
        self._delta[("basis", key, bounds)] = out
        if len(self._delta) % 200 == 0:
            log.progress(f"coproduct cache holds {len(self._delta)} entries")
        return out
