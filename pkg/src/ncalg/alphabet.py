from __future__ import annotations
from dataclasses import dataclass, field

KINDS = ("x-coord", "theta", "z", "z-diag", "z-diag-inv", "X", "Y")


@dataclass(frozen=True)
class Letter:
    name: str
    kind: str
    index: tuple[int, ...]
    primed: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def height(self) -> int:
        """X_i^j has height i-j, Y_i^j has height j-i; every other letter 0."""
        if self.kind == "X":
            return self.index[0] - self.index[1]
        if self.kind == "Y":
            return self.index[1] - self.index[0]
        return 0

    @property
    def is_lattice(self) -> bool:
        return self.kind in ("z-diag", "z-diag-inv")

    def __str__(self) -> str:
        return self.name + ("'" if self.primed else "")


@dataclass(frozen=True)
class Alphabet:
    """Generators in normal-order position: letters[k] is the k-th smallest."""
    letters: tuple[Letter, ...]
    _by_name: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = {}
        for pos, letter in enumerate(self.letters):
            key = str(letter)
            if key in names:
                raise ValueError(f"duplicate generator {key}")
            names[key] = pos
        object.__setattr__(self, "_by_name", names)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, pos: int) -> Letter:
        return self.letters[pos]

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError as e:
            raise KeyError(f"no generator named {name!r}") from e

    def find(self, kind: str, *index: int, primed: bool = False) -> int:
        for pos, letter in enumerate(self.letters):
            if letter.kind == kind and letter.index == tuple(index) and letter.primed == primed:
                return pos
        raise KeyError(f"no generator of kind {kind} with index {index}")

    def has(self, kind: str, *index: int, primed: bool = False) -> bool:
        try:
            self.find(kind, *index, primed=primed)
            return True
        except KeyError:
            return False

    def positions(self, kind: str, primed: bool = False) -> list[int]:
        return [p for p, l in enumerate(self.letters) if l.kind == kind and l.primed == primed]

    def word_str(self, word: tuple[int, ...]) -> str:
        return "*".join(str(self.letters[p]) for p in word) if word else "1"

    def height(self, word: tuple[int, ...], kind: str | None = None, primed: bool | None = None) -> int:
        total = 0
        for p in word:
            letter = self.letters[p]
            if kind is not None and letter.kind != kind:
                continue
            if primed is not None and letter.primed != primed:
                continue
            total += letter.height
        return total

    def doubled(self) -> Alphabet:
        """Unprimed letters followed by primed copies, so primes sort after everything unprimed."""
        primes = tuple(Letter(l.name, l.kind, l.index, True) for l in self.letters)
        return Alphabet(self.letters + primes)

    def prime(self, pos: int) -> int:
        """Position of the primed copy of letter pos inside doubled()."""
        return pos + len(self.letters)


# -------------------- standard alphabets --------------------
def coordinate_alphabet(n: int, with_theta: bool = False) -> Alphabet:
    letters = [Letter(f"x{i}", "x-coord", (i,)) for i in range(1, n + 1)]
    if with_theta:
        letters += [Letter(f"th{i}", "theta", (i,)) for i in range(1, n + 1)]
    return Alphabet(tuple(letters))


def matrix_alphabet(n: int) -> Alphabet:
    """z_i^j in lexicographic (row, column) order."""
    return Alphabet(tuple(Letter(f"z{i}^{j}", "z", (i, j))
                          for i in range(1, n + 1) for j in range(1, n + 1)))


def factored_alphabet(n: int, sector: str = "full") -> Alphabet:
    """X-sector < lattice < Y-sector.

    X_i^j (i>j) ordered by (j, i); Y_i^j (i<j) ordered by row then column, both
    descending; lattice letters z_1 < z_1^-1 < z_2 < ...
    sector "minus" keeps X with lattice letters x_k, "plus" keeps Y with y_k.
    """
    if sector not in ("full", "minus", "plus"):
        raise ValueError(f"unknown sector {sector!r}")
    lat = {"full": "z", "minus": "x", "plus": "y"}[sector]
    letters = []
    if sector != "plus":
        xs = sorted(((i, j) for i in range(1, n + 1) for j in range(1, i)), key=lambda t: (t[1], t[0]))
        letters += [Letter(f"X{i}^{j}", "X", (i, j)) for i, j in xs]
    for k in range(1, n + 1):
        letters.append(Letter(f"{lat}{k}", "z-diag", (k,)))
        letters.append(Letter(f"{lat}{k}^-1", "z-diag-inv", (k,)))
    if sector != "minus":
        ys = sorted(((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)), key=lambda t: (-t[0], -t[1]))
        letters += [Letter(f"Y{i}^{j}", "Y", (i, j)) for i, j in ys]
    return Alphabet(tuple(letters))
