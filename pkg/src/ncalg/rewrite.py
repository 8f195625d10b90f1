from __future__ import annotations
import heapq
from dataclasses import dataclass, field

from ..ring import ParamSpace, Ratio
from ..utils.constants import REWRITE_BUDGET
from ..utils.errors import RewriteBudgetError
from .alphabet import Alphabet
from .poly import NCPoly, Word, word_key


def _heap_key(word: Word):
    # heapq is a min-heap; this key pops the order-largest word first
    return (-len(word), tuple(-x for x in word))


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    left: NCPoly
    right: NCPoly

    def __str__(self) -> str:
        alphabet = self.left.alphabet
        return f"overlap {alphabet.word_str(self.word)}: {self.left - self.right}"


@dataclass
class RewriteSystem:
    """Rules lhs -> rhs with rhs strictly smaller than lhs in the degree-lex order."""
    space: ParamSpace
    alphabet: Alphabet
    rules: dict = field(default_factory=dict)  # {Word: NCPoly}
    budget: int = REWRITE_BUDGET

    def __post_init__(self):
        self._by_len = {}
        for lhs in self.rules:
            self._by_len.setdefault(len(lhs), set()).add(lhs)

    # -------------------- Construction --------------------
    @classmethod
    def from_relations(cls, space: ParamSpace, alphabet: Alphabet, relations: list[NCPoly],
                       budget: int = REWRITE_BUDGET) -> RewriteSystem:
        """Orient relations by row reduction: each one is reduced by the rules found so far,
        and the order-largest surviving word becomes a new left side."""
        sys = cls(space, alphabet, {}, budget)
        for rel in sorted(relations, key=lambda r: word_key(r.leading()[0]) if r.terms else (0, ())):
            rel = sys.normal_form(rel)
            if rel.is_zero():
                continue
            lead, c = rel.leading()
            if not lead:
                raise ValueError("relations are inconsistent: they force 1 = 0")
            rhs = (NCPoly.word(space, alphabet, lead, c) - rel).scale(c.inverse())
            sys._add_rule(lead, rhs)
        sys._interreduce()
        return sys

    def _add_rule(self, lhs: Word, rhs: NCPoly):
        # older rules whose right side mentions lhs are refreshed by _interreduce
        self.rules[lhs] = rhs
        self._by_len.setdefault(len(lhs), set()).add(lhs)

    def _interreduce(self):
        for lhs in sorted(self.rules, key=word_key):
            rest = RewriteSystem(self.space, self.alphabet,
                                 {w: r for w, r in self.rules.items() if w != lhs}, self.budget)
            self.rules[lhs] = rest.normal_form(self.rules[lhs])

    # -------------------- Reduction --------------------
    def match(self, word: Word) -> tuple[int, Word] | None:
        """Leftmost rule occurrence in word as (position, lhs)."""
        for pos in range(len(word)):
            for length, lhss in self._by_len.items():
                sub = word[pos:pos + length]
                if len(sub) == length and sub in lhss:
                    return pos, sub
        return None

    def is_normal(self, word: Word) -> bool:
        return self.match(word) is None

    def apply_at(self, word: Word, pos: int, lhs: Word) -> NCPoly:
        rhs = self.rules[lhs]
        pre, post = word[:pos], word[pos + len(lhs):]
        return NCPoly._raw(self.space, self.alphabet, {pre + w + post: c for w, c in rhs.terms.items()})

    def normal_form(self, p: NCPoly, check_id: str | None = None) -> NCPoly:
        pending = dict(p.terms)
        heap = [(_heap_key(w), w) for w in pending]
        heapq.heapify(heap)
        queued = set(pending)
        out = {}
        steps = 0
        while heap:
            _, w = heapq.heappop(heap)
            queued.discard(w)
            c = pending.pop(w, None)
            if c is None or c.is_zero():
                continue
            hit = self.match(w)
            if hit is None:
                out[w] = c
                continue
            steps += 1
            if steps > self.budget:
                raise RewriteBudgetError(self.budget, self.alphabet.word_str(w), check_id)
            pos, lhs = hit
            pre, post = w[:pos], w[pos + len(lhs):]
            for rw, rc in self.rules[lhs].terms.items():
                nw = pre + rw + post
                v = pending.get(nw)
                pending[nw] = c * rc if v is None else v + c * rc
                if nw not in queued:
                    queued.add(nw)
                    heapq.heappush(heap, (_heap_key(nw), nw))
        return NCPoly._raw(self.space, self.alphabet, out)

    def nf_word(self, word: Word) -> NCPoly:
        return self.normal_form(NCPoly.word(self.space, self.alphabet, word))

    # -------------------- Diagnostics --------------------
    def normal_words(self, d: int, letters: list[int] | None = None) -> list[Word]:
        letters = list(range(len(self.alphabet))) if letters is None else sorted(letters)
        maxlen = max(self._by_len, default=0)
        out = []

        def grow(prefix: Word):
            if len(prefix) == d:
                out.append(prefix)
                return
            for x in letters:
                w = prefix + (x,)
                if any(w[len(w) - k:] in self._by_len.get(k, ()) for k in range(1, min(maxlen, len(w)) + 1)):
                    continue
                grow(w)

        grow(())
        return out

    def graded_dim(self, d: int, letters: list[int] | None = None) -> int:
        return len(self.normal_words(d, letters))

    def overlaps(self, d: int) -> list[tuple[Word, tuple[int, Word], tuple[int, Word]]]:
        """Overlap and inclusion ambiguities of length <= d."""
        out = []
        lhss = sorted(self.rules, key=word_key)
        for u in lhss:
            for v in lhss:
                for k in range(1, min(len(u), len(v))):
                    if u[len(u) - k:] == v[:k] and len(u) + len(v) - k <= d:
                        out.append((u + v[k:], (0, u), (len(u) - k, v)))
                if u != v and len(v) < len(u):
                    for pos in range(len(u) - len(v) + 1):
                        if u[pos:pos + len(v)] == v:
                            out.append((u, (0, u), (pos, v)))
        return out

    def local_confluence(self, d: int = 3) -> list[Ambiguity]:
        failed = []
        for word, (p1, l1), (p2, l2) in self.overlaps(d):
            left = self.normal_form(self.apply_at(word, p1, l1))
            right = self.normal_form(self.apply_at(word, p2, l2))
            if left != right:
                failed.append(Ambiguity(word, left, right))
        return failed

    def dump(self) -> list[str]:
        return [f"{self.alphabet.word_str(lhs)} -> {self.rules[lhs]}"
                for lhs in sorted(self.rules, key=word_key)]
