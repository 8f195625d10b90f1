from __future__ import annotations
from dataclasses import dataclass

from ..ncalg import NCPoly
from ..ring import Ratio
from ..utils.errors import DegreeOverflowError
from .algebra import FactoredAlgebra, Key, _acc
from .lattice import LatticeFn


def _value_at(f: LatticeFn, mono) -> LatticeFn:
    _, s, u, _ = mono
    return f.affine(u, s) if s != 1 or any(u) else f


class Functional:
    """Linear form on the factored algebra: basis X^a z^m Y^c pairs to values[(a, c)](m)."""
    __slots__ = ("algebra", "values")

    def __init__(self, algebra: FactoredAlgebra, values: dict | None = None):
        self.algebra = algebra
        self.values = {k: v for k, v in (values or {}).items() if not v.is_zero()}

    @property
    def space(self):
        return self.algebra.space

    def bounds(self) -> tuple[int, int]:
        """Largest X and Y height in the support."""
        h = self.algebra.height
        return (max((h(xw) for xw, _ in self.values), default=0),
                max((h(yw) for _, yw in self.values), default=0))

    def __getitem__(self, key: Key) -> LatticeFn:
        return self.values.get(key) or LatticeFn.zero(self.space, self.algebra.n)

    # -------------------- Arithmetic --------------------
    def __add__(self, other: Functional) -> Functional:
        out = dict(self.values)
        for k, v in other.values.items():
            _acc(out, k, v)
        return Functional(self.algebra, out)

    def __neg__(self) -> Functional:
        return Functional(self.algebra, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: Functional) -> Functional:
        return self + (-other)

    def scale(self, c) -> Functional:
        return Functional(self.algebra, {k: v.scale(c) for k, v in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, Functional):
            return dual_mul(self, other)
        return self.scale(other)

    def __pow__(self, k: int) -> Functional:
        out = counit(self.algebra)
        for _ in range(k):
            out = out * self
        return out

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return not self.values

    def witness(self) -> str | None:
        """First basis element the functional does not annihilate, with its value."""
        if not self.values:
            return None
        key = min(self.values, key=lambda k: (len(k[0]) + len(k[1]), k))
        return f"{self.algebra.key_str(key)} -> {self.values[key]}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self) -> str:
        if not self.values:
            return "0"
        return " + ".join(f"<{self.algebra.key_str(k)}: {v}>" for k, v in sorted(self.values.items()))

    __repr__ = __str__


class TensorFunctional:
    """Linear form on pairs of basis elements: (L, L') pairs to values[(key, key')](m, m')."""
    __slots__ = ("algebra", "values")

    def __init__(self, algebra: FactoredAlgebra, values: dict | None = None):
        self.algebra = algebra
        self.values = {k: v for k, v in (values or {}).items() if not v.is_zero()}

    @classmethod
    def tensor(cls, F: Functional, G: Functional) -> TensorFunctional:
        return cls(F.algebra, {(k1, k2): f.tensor(g) for k1, f in F.values.items() for k2, g in G.values.items()})

    def bounds(self) -> tuple[tuple[int, int], tuple[int, int]]:
        h = self.algebra.height
        return ((max((h(k[0][0]) for k in self.values), default=0), max((h(k[0][1]) for k in self.values), default=0)),
                (max((h(k[1][0]) for k in self.values), default=0), max((h(k[1][1]) for k in self.values), default=0)))

    def __add__(self, other: TensorFunctional) -> TensorFunctional:
        out = dict(self.values)
        for k, v in other.values.items():
            _acc(out, k, v)
        return TensorFunctional(self.algebra, out)

    def __neg__(self) -> TensorFunctional:
        return TensorFunctional(self.algebra, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: TensorFunctional) -> TensorFunctional:
        return self + (-other)

    def scale(self, c) -> TensorFunctional:
        return TensorFunctional(self.algebra, {k: v.scale(c) for k, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def witness(self) -> str | None:
        if not self.values:
            return None
        key = min(self.values)
        k1, k2 = key
        return f"({self.algebra.key_str(k1)}, {self.algebra.key_str(k2)}) -> {self.values[key]}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorFunctional):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None


# -------------------- Generators --------------------
def counit(algebra: FactoredAlgebra) -> Functional:
    return Functional(algebra, {((), ()): LatticeFn.const(algebra.space, algebra.n)})


def character(algebra: FactoredAlgebra, chars) -> Functional:
    """Group-like K[c]: z^m -> prod c_k^{m_k}, zero off the lattice."""
    chars = tuple(Ratio.of(algebra.space, c) for c in chars)
    if len(chars) != algebra.n:
        raise ValueError(f"character needs {algebra.n} entries, got {len(chars)}")
    return Functional(algebra, {((), ()): LatticeFn.character(algebra.space, chars)})


def H(algebra: FactoredAlgebra, k: int) -> Functional:
    """z^m -> m_k."""
    return Functional(algebra, {((), ()): LatticeFn.coordinate(algebra.space, algebra.n, k - 1)})


def P(algebra: FactoredAlgebra, i: int, j: int) -> Functional:
    """Dual of X_i^j (i > j), constant along the lattice."""
    if i <= j:
        raise ValueError(f"P_{i}^{j} needs i > j")
    p = algebra.alphabet.find("X", i, j)
    return Functional(algebra, {((p,), ()): LatticeFn.const(algebra.space, algebra.n)})


def Q(algebra: FactoredAlgebra, i: int, j: int) -> Functional:
    """Dual of Y_i^j (i < j)."""
    if i >= j:
        raise ValueError(f"Q_{i}^{j} needs i < j")
    p = algebra.alphabet.find("Y", i, j)
    return Functional(algebra, {((), (p,)): LatticeFn.const(algebra.space, algebra.n)})


def qgroup_generators(algebra: FactoredAlgebra) -> dict[str, Functional]:
    """P_i^j (i>j), Q_i^j (i<j), H_k and the counit, keyed by name."""
    n = algebra.n
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i > j:
                out[f"P{i}^{j}"] = P(algebra, i, j)
            elif i < j:
                out[f"Q{i}^{j}"] = Q(algebra, i, j)
    for k in range(1, n + 1):
        out[f"H{k}"] = H(algebra, k)
    out["1"] = counit(algebra)
    return out


# -------------------- Pairing --------------------
def split_word(algebra: FactoredAlgebra, word) -> tuple[Key, tuple[int, ...]]:
    """Normal word -> ((X part, Y part), lattice exponent)."""
    alpha = algebra.alphabet
    xw, yw, m = [], [], [0] * algebra.n
    for p in word:
        letter = alpha[p]
        if letter.kind == "X":
            xw.append(p)
        elif letter.kind == "Y":
            yw.append(p)
        elif letter.kind == "z-diag":
            m[letter.index[0] - 1] += 1
        elif letter.kind == "z-diag-inv":
            m[letter.index[0] - 1] -= 1
        else:
            raise ValueError(f"letter {letter} is not in the factored alphabet")
    return (tuple(xw), tuple(yw)), tuple(m)


def pair(F: Functional, p: NCPoly) -> Ratio:
    """<F, p> after normal-forming p."""
    algebra = F.algebra
    out = Ratio.zero(algebra.space)
    for word, c in algebra.pres.nf(p).terms.items():
        key, m = split_word(algebra, word)
        h = algebra.height(key[0]) + algebra.height(key[1])
        if h > algebra.degree:
            raise DegreeOverflowError(f"{algebra.alphabet.word_str(word)} has height {h} > {algebra.degree}")
        f = F.values.get(key)
        if f is not None:
            out = out + c * f.evaluate(m)
    return out


# -------------------- Dual product and coproduct --------------------
def dual_mul(F: Functional, G: Functional) -> Functional:
    """(FG)(L) = (F (x) G)(D L)."""
    algebra = F.algebra
    (xf, yf), (xg, yg) = F.bounds(), G.bounds()
    if xf + yf + xg + yg > algebra.degree:
        raise DegreeOverflowError(f"product of heights {xf + yf} and {xg + yg} exceeds degree {algebra.degree}")
    bounds = (xf, yf, xg, yg)
    out: dict = {}
    for key in algebra.keys(xf + xg, yf + yg):
        acc = None
        for (l1, l2), c in algebra.coproduct_basis(key, bounds).items():
            f = F.values.get((l1[0], l1[3]))
            if f is None:
                continue
            g = G.values.get((l2[0], l2[3]))
            if g is None:
                continue
            term = c * _value_at(f, l1) * _value_at(g, l2)
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            out[key] = acc
    return Functional(algebra, out)


def dual_comul(F: Functional) -> TensorFunctional:
    """(DF)(L, L') = F(L L') with L = X^a z^m Y^c, L' = X^b z^m' Y^d."""
    algebra = F.algebra
    xf, yf = F.bounds()
    out: dict = {}
    for hx in range(xf + 1):
        for hy in range(yf + 1):
            for a in algebra.words("X", hx):
                for b in [w for h in range(xf - hx + 1) for w in algebra.words("X", h)]:
                    nx = algebra.nf(a + b)
                    for c in algebra.words("Y", hy):
                        for d in [w for h in range(yf - hy + 1) for w in algebra.words("Y", h)]:
                            val = None
                            for wx, cx in nx:
                                for wy, cy in algebra.nf(c + d):
                                    f = F.values.get((wx, wy))
                                    if f is not None:
                                        term = f.scale(cx * cy)
                                        val = term if val is None else val + term
                            if val is None or val.is_zero():
                                continue
                            twist = algebra.gamma(b) + algebra.gamma_prime(c)
                            out[((a, c), (b, d))] = val.block_sum().times_character(twist)
    return TensorFunctional(algebra, out)


def tensor_mul(S: TensorFunctional, T: TensorFunctional) -> TensorFunctional:
    """Product in the dual of A (x) A: (ST)(L, L') = sum S(L_1, L'_1) T(L_2, L'_2)."""
    algebra = S.algebra
    n = algebra.n
    (s1, s2), (t1, t2) = S.bounds(), T.bounds()
    if max(sum(s1) + sum(t1), sum(s2) + sum(t2)) > algebra.degree:
        raise DegreeOverflowError(f"tensor product exceeds degree {algebra.degree}")
    left_bounds = (s1[0], s1[1], t1[0], t1[1])
    right_bounds = (s2[0], s2[1], t2[0], t2[1])
    first, second = tuple(range(n)), tuple(range(n, 2 * n))
    out: dict = {}
    for L in algebra.keys(s1[0] + t1[0], s1[1] + t1[1]):
        dL = algebra.coproduct_basis(L, left_bounds)
        for Lp in algebra.keys(s2[0] + t2[0], s2[1] + t2[1]):
            dLp = algebra.coproduct_basis(Lp, right_bounds)
            acc = None
            for (l1, l2), c in dL.items():
                for (r1, r2), cp in dLp.items():
                    f = S.values.get(((l1[0], l1[3]), (r1[0], r1[3])))
                    if f is None:
                        continue
                    g = T.values.get(((l2[0], l2[3]), (r2[0], r2[3])))
                    if g is None:
                        continue
                    if {l1[1], l2[1], r1[1], r2[1]} != {1}:
                        raise ValueError("basis coproduct lost its lattice exponent")
                    term = f.affine(l1[2] + r1[2]) * g.affine(l2[2] + r2[2]) \
                        * c.embed(2 * n, first) * cp.embed(2 * n, second)
                    acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                out[(L, Lp)] = acc
    return TensorFunctional(algebra, out)


# -------------------- Solving --------------------
def proportional(A, B) -> Ratio | None:
    """r with A = r B for Functionals or LatticeFns, or None."""
    space = A.algebra.space if isinstance(A, Functional) else A.space
    if B.is_zero():
        return Ratio.zero(space) if A.is_zero() else None
    if isinstance(B, Functional):
        key = min(B.values)
        a, b = A[key], B.values[key]
    else:
        a, b = A, B
    char, exps, c = b.leading()
    r = a.coefficient(char, exps) / c
    return r if (A - B.scale(r)).is_zero() else None


def commutator(F: Functional, G: Functional, k=1) -> Functional:
    """F G - k G F."""
    return F * G - (G * F).scale(k)


# -------------------- Universal T --------------------
@dataclass(frozen=True)
class UTObject:
    """Truncated resolution of the identity: basis index with its dual functional."""
    algebra: FactoredAlgebra
    pairs: tuple

    def dual(self, key: Key) -> Functional:
        return dict(self.pairs)[key]


def ut_pairs(algebra: FactoredAlgebra) -> UTObject:
    """Every basis index up to height D with the indicator functional of its (X, Y) part."""
    one = LatticeFn.const(algebra.space, algebra.n)
    d = algebra.degree
    return UTObject(algebra, tuple((key, Functional(algebra, {key: one})) for key in algebra.keys(d, d)))
