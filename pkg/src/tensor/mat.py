from __future__ import annotations
import json
from itertools import product

import numpy as np

from ..ring import ParamSpace, Ratio
from ..utils.errors import LegMismatchError


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


class Mat:
    """Square matrix acting on V^{(x)legs}, dim V = dim_per_leg.

    Row and column multi-indices (i_1, ..., i_k) are flattened big-endian:
    leg 1 is the most significant digit. Entries live in a numpy object array
    and only need +, * and is_zero, so Ratio and NCPoly entries both work.
    """

    def __init__(self, entries, dim_per_leg: int, legs: int = 1, zero=None):
        self.entries = np.array(entries, dtype=object)
        self.dim_per_leg = dim_per_leg
        self.legs = legs
        size = dim_per_leg ** legs
        if self.entries.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix for {legs} legs of dim {dim_per_leg}, "
                             f"got shape {self.entries.shape}")
        self.zero = zero if zero is not None else self.entries.flat[0] * 0

    # -------------------- Constructors --------------------
    @classmethod
    def zeros(cls, space: ParamSpace, legs: int = 1, dim: int | None = None, zero=None) -> Mat:
        dim = dim or space.n
        size = dim ** legs
        zero = zero if zero is not None else Ratio.zero(space)
        entries = np.empty((size, size), dtype=object)
        entries.fill(zero)
        return cls(entries, dim, legs, zero)

    @classmethod
    def identity(cls, space: ParamSpace, legs: int = 1, dim: int | None = None) -> Mat:
        out = cls.zeros(space, legs, dim)
        one = Ratio.one(space)
        for k in range(out.size):
            out.entries[k, k] = one
        return out

    @classmethod
    def unit(cls, space: ParamSpace, i: int, j: int, dim: int | None = None) -> Mat:
        """Matrix unit M_i^j (1-based): 1 in row i, column j."""
        out = cls.zeros(space, 1, dim)
        out.entries[i - 1, j - 1] = Ratio.one(space)
        return out

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    # -------------------- Indexing --------------------
    def flat(self, multi: tuple[int, ...]) -> int:
        """1-based multi-index -> 0-based flat position."""
        if len(multi) != self.legs:
            raise LegMismatchError(f"multi-index {multi} has {len(multi)} legs, matrix has {self.legs}")
        pos = 0
        for i in multi:
            pos = pos * self.dim_per_leg + (i - 1)
        return pos

    def unflat(self, pos: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.legs):
            pos, r = divmod(pos, self.dim_per_leg)
            digits.append(r + 1)
        return tuple(reversed(digits))

    def __getitem__(self, key):
        row, col = key
        return self.entries[self.flat(tuple(row)), self.flat(tuple(col))]

    def __setitem__(self, key, value):
        row, col = key
        self.entries[self.flat(tuple(row)), self.flat(tuple(col))] = value

    def multi_indices(self):
        return product(range(1, self.dim_per_leg + 1), repeat=self.legs)

    def copy(self) -> Mat:
        return Mat(self.entries.copy(), self.dim_per_leg, self.legs, self.zero)

    # -------------------- Arithmetic --------------------
    def _check(self, other: Mat):
        if self.dim_per_leg != other.dim_per_leg or self.legs != other.legs:
            raise LegMismatchError(f"cannot combine {self.legs}x{self.dim_per_leg} with "
                                   f"{other.legs}x{other.dim_per_leg}")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self.entries + other.entries, self.dim_per_leg, self.legs, self.zero)

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self.entries + (-1) * other.entries, self.dim_per_leg, self.legs, self.zero)

    def __neg__(self) -> Mat:
        return Mat((-1) * self.entries, self.dim_per_leg, self.legs, self.zero)

    def scale(self, c) -> Mat:
        out = np.empty_like(self.entries)
        for idx, x in np.ndenumerate(self.entries):
            out[idx] = self.zero if _is_zero(x) else c * x
        return Mat(out, self.dim_per_leg, self.legs, self.zero)

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        n = self.size
        rows = [[(k, x) for k, x in enumerate(self.entries[i]) if not _is_zero(x)] for i in range(n)]
        cols = [[(k, y) for k, y in enumerate(other.entries[:, j]) if not _is_zero(y)] for j in range(n)]
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            left = dict(rows[i])
            for j in range(n):
                acc = self.zero
                for k, y in cols[j]:
                    x = left.get(k)
                    if x is not None:
                        acc = acc + x * y
                out[i, j] = acc
        return Mat(out, self.dim_per_leg, self.legs, self.zero)

    def transpose(self) -> Mat:
        return Mat(self.entries.T.copy(), self.dim_per_leg, self.legs, self.zero)

    def map(self, fn, zero=None) -> Mat:
        out = np.empty_like(self.entries)
        for idx, x in np.ndenumerate(self.entries):
            out[idx] = fn(x)
        return Mat(out, self.dim_per_leg, self.legs, zero if zero is not None else fn(self.zero))

    def inverse(self) -> Mat:
        """Exact Gauss-Jordan inverse over Ratio."""
        n = self.size
        aug = [list(self.entries[i]) + [Ratio.one(self.zero.space) if i == j else self.zero for j in range(n)]
               for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Mat([row[n:] for row in aug], self.dim_per_leg, self.legs, self.zero)

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return all(_is_zero(x) for x in self.entries.flat)

    def nonzero_count(self) -> int:
        return sum(1 for x in self.entries.flat if not _is_zero(x))

    def max_residual_terms(self) -> int:
        """Largest number of monomials in any entry (numerator terms for Ratio)."""
        best = 0
        for x in self.entries.flat:
            if _is_zero(x):
                continue
            terms = getattr(getattr(x, "num", x), "terms", None)
            best = max(best, len(terms) if terms is not None else 1)
        return best

    def first_nonzero(self):
        for pos, x in enumerate(self.entries.flat):
            if not _is_zero(x):
                i, j = divmod(pos, self.size)
                return self.unflat(i), self.unflat(j), x
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.legs == other.legs and self.dim_per_leg == other.dim_per_leg and (self - other).is_zero()

    __hash__ = None

    def __str__(self) -> str:
        rows = []
        for i in range(self.size):
            rows.append("[" + ", ".join(str(x) for x in self.entries[i]) + "]")
        return "\n".join(rows)

    # -------------------- JSON --------------------
    def to_json(self) -> str:
        return json.dumps({
            "n": self.dim_per_leg,
            "legs": self.legs,
            "convention": "big-endian",
            "entries": [[str(x) for x in row] for row in self.entries],
        })

    @classmethod
    def from_json(cls, space: ParamSpace, text: str) -> Mat:
        data = json.loads(text)
        if data.get("convention") != "big-endian":
            raise ValueError(f"unsupported flattening convention {data.get('convention')!r}")
        entries = [[Ratio.from_string(space, s) for s in row] for row in data["entries"]]
        return cls(entries, data["n"], data["legs"], Ratio.zero(space))


# -------------------- tensor operations --------------------
def kron(A: Mat, B: Mat) -> Mat:
    if A.dim_per_leg != B.dim_per_leg:
        raise LegMismatchError(f"leg dimensions differ: {A.dim_per_leg} vs {B.dim_per_leg}")
    na, nb = A.size, B.size
    out = np.empty((na * nb, na * nb), dtype=object)
    out.fill(A.zero)
    for (i, k), x in np.ndenumerate(A.entries):
        if _is_zero(x):
            continue
        for (j, l), y in np.ndenumerate(B.entries):
            if not _is_zero(y):
                out[i * nb + j, k * nb + l] = x * y
    return Mat(out, A.dim_per_leg, A.legs + B.legs, A.zero)


def embed(R: Mat, positions: tuple[int, int], total_legs: int) -> Mat:
    """R acting on legs (p, q) of V^{(x)total_legs}, identity elsewhere."""
    p, q = positions
    if R.legs != 2:
        raise LegMismatchError(f"embed needs a 2-leg matrix, got {R.legs} legs")
    if not (1 <= p < q <= total_legs):
        raise ValueError(f"positions {positions} out of range for {total_legs} legs")
    n = R.dim_per_leg
    out = Mat(np.full((n ** total_legs,) * 2, R.zero, dtype=object), n, total_legs, R.zero)
    for row in out.multi_indices():
        for (k, l), (r, c) in _nonzero_2leg(R, row[p - 1], row[q - 1]):
            col = list(row)
            col[p - 1], col[q - 1] = k, l
            out.entries[out.flat(row), out.flat(tuple(col))] = c
    return out


def _nonzero_2leg(R: Mat, i: int, j: int):
    n = R.dim_per_leg
    r = (i - 1) * n + (j - 1)
    for c, x in enumerate(R.entries[r]):
        if not _is_zero(x):
            yield (c // n + 1, c % n + 1), (r, x)


def mat_poly(M: Mat, roots: list) -> Mat:
    """prod (M - r I)."""
    space = M.zero.space
    I = Mat.identity(space, M.legs, M.dim_per_leg)
    out = I
    for r in roots:
        out = out @ (M - I.scale(Ratio.of(space, r)))
    return out
