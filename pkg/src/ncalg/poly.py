from __future__ import annotations
from fractions import Fraction

from ..ring import ParamSpace, Ratio, Scalar
from .alphabet import Alphabet

Word = tuple[int, ...]


def word_key(word: Word):
    """Sort key for the monomial order: degree first, then position-lexicographic."""
    return (len(word), word)


class NCPoly:
    """Noncommutative polynomial: {word: Ratio}, words are tuples of alphabet positions."""
    __slots__ = ("space", "alphabet", "terms")

    def __init__(self, space: ParamSpace, alphabet: Alphabet, terms: dict | None = None):
        self.space = space
        self.alphabet = alphabet
        self.terms = {}
        for w, c in (terms or {}).items():
            c = Ratio.of(space, c)
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, space, alphabet, terms) -> NCPoly:
        obj = cls.__new__(cls)
        obj.space, obj.alphabet, obj.terms = space, alphabet, terms
        return obj

    # -------------------- Constructors --------------------
    @classmethod
    def zero(cls, space: ParamSpace, alphabet: Alphabet) -> NCPoly:
        return cls._raw(space, alphabet, {})

    @classmethod
    def const(cls, space: ParamSpace, alphabet: Alphabet, c=1) -> NCPoly:
        return cls(space, alphabet, {(): c})

    @classmethod
    def word(cls, space: ParamSpace, alphabet: Alphabet, word: Word, c=1) -> NCPoly:
        return cls(space, alphabet, {tuple(word): c})

    @classmethod
    def gen(cls, space: ParamSpace, alphabet: Alphabet, name: str) -> NCPoly:
        return cls.word(space, alphabet, (alphabet.index(name),))

    # -------------------- Predicates --------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def leading(self) -> tuple[Word, Ratio]:
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def coefficient(self, word: Word) -> Ratio:
        return self.terms.get(tuple(word), Ratio.zero(self.space))

    # -------------------- Arithmetic --------------------
    def _coerce(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            return other
        return NCPoly.const(self.space, self.alphabet, other)

    def __add__(self, other) -> NCPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        return NCPoly._raw(self.space, self.alphabet, out)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly._raw(self.space, self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> NCPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> NCPoly:
        return self._coerce(other) - self

    def scale(self, c) -> NCPoly:
        c = Ratio.of(self.space, c)
        if c.is_zero():
            return NCPoly.zero(self.space, self.alphabet)
        return NCPoly._raw(self.space, self.alphabet, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other) -> NCPoly:
        if isinstance(other, (int, Fraction, Ratio, Scalar)):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w)
                v = c1 * c2 if v is None else v + c1 * c2
                if v.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = v
        return NCPoly._raw(self.space, self.alphabet, out)

    def __rmul__(self, other) -> NCPoly:
        return self.scale(other)

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.const(self.space, self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def map_letters(self, images: dict, alphabet: Alphabet) -> NCPoly:
        """Algebra map sending letter p to images[p] (an NCPoly over alphabet)."""
        out = NCPoly.zero(self.space, alphabet)
        for w, c in self.terms.items():
            term = NCPoly.const(self.space, alphabet, c)
            for p in w:
                term = term * images[p]
            out = out + term
        return out

    # -------------------- Comparison --------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Ratio, Scalar)):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key, reverse=True):
            parts.append(f"{self.terms[w]}*{self.alphabet.word_str(w)}")
        return " + ".join(parts)

    __repr__ = __str__
