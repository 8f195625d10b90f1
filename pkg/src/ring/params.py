from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


@dataclass(frozen=True)
class ParamSpace:
    """Parameters q^{ij} (i<j) and the Hecke parameter a for gl(n).

    Exponents are stored as integers scaled by exp_denom so that N-th roots and
    half-integer powers of the parameters stay monomials.
    """
    n: int
    exp_denom: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"matrix size must be at least 2, got n={self.n}")
        if self.exp_denom == 0:
            object.__setattr__(self, "exp_denom", 2 * self.n)
        if self.exp_denom < 1:
            raise ValueError(f"exponent denominator must be positive, got {self.exp_denom}")

    @cached_property
    def params(self) -> tuple[str, ...]:
        names = [f"q{i}{j}" for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]
        return tuple(names) + ("a",)

    @cached_property
    def slots(self) -> dict[str, int]:
        return {name: idx for idx, name in enumerate(self.params)}

    @property
    def nparams(self) -> int:
        return len(self.params)

    @property
    def a_slot(self) -> int:
        return self.nparams - 1

    def slot(self, name: str) -> int:
        try:
            return self.slots[name]
        except KeyError as e:
            raise ValueError(f"unknown parameter {name!r} for n={self.n}") from e

    def exponent_vector(self, exps: dict[str, Fraction | int]) -> tuple[int, ...]:
        vec = [0] * self.nparams
        for name, e in exps.items():
            scaled = Fraction(e) * self.exp_denom
            if scaled.denominator != 1:
                raise ValueError(f"exponent {e} of {name} not on the lattice 1/{self.exp_denom}")
            vec[self.slot(name)] += int(scaled)
        return tuple(vec)

    # -------------------- Constructors --------------------
    def zero(self):
        from .scalar import Scalar
        return Scalar(self)

    def one(self):
        return self.const(1)

    def const(self, value):
        from .scalar import Scalar
        return Scalar(self, {(0,) * self.nparams: Fraction(value)})

    def monomial(self, exps: dict[str, Fraction | int], coeff=1):
        from .scalar import Scalar
        return Scalar(self, {self.exponent_vector(exps): Fraction(coeff)})

    @property
    def a(self):
        return self.monomial({"a": 1})

    def q(self, i: int, j: int):
        """q^{ij} with q^{ii} = 1 and q^{ji} = 1/q^{ij}."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"q index ({i},{j}) out of range for n={self.n}")
        if i == j:
            return self.one()
        if i < j:
            return self.monomial({f"q{i}{j}": 1})
        return self.monomial({f"q{j}{i}": -1})