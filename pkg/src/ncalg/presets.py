from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property

from ..ring import ParamSpace, Ratio, Scalar
from ..rmatrix import QuadRelation, pseudogroup_relations, row_relations
from ..tensor import Mat
from .alphabet import Alphabet, coordinate_alphabet, factored_alphabet, matrix_alphabet
from .poly import NCPoly
from .rewrite import RewriteSystem


@dataclass(frozen=True)
class Presentation:
    name: str
    space: ParamSpace
    alphabet: Alphabet
    system: RewriteSystem
    relations: tuple = ()
    coproduct_table: dict | None = field(default=None, compare=False)

    def gen(self, name: str) -> NCPoly:
        return NCPoly.gen(self.space, self.alphabet, name)

    def word(self, *names: str) -> NCPoly:
        return NCPoly.word(self.space, self.alphabet, tuple(self.alphabet.index(n) for n in names))

    def one(self) -> NCPoly:
        return NCPoly.const(self.space, self.alphabet)

    def nf(self, p: NCPoly) -> NCPoly:
        return self.system.normal_form(p)

    @cached_property
    def doubled(self) -> RewriteSystem:
        from .coproduct import leg_system
        return leg_system(self.system, 2)


def _rel_poly(space: ParamSpace, alphabet: Alphabet, terms: dict) -> NCPoly:
    return NCPoly(space, alphabet, terms)


# -------------------- Quantum plane and calculus --------------------
def _coordinate_relations(P: Mat, alphabet: Alphabet, kind: str, shift: Ratio) -> list[NCPoly]:
    """Columns of v v (P + shift) = 0 for v the letters of the given kind."""
    space = P.zero.space
    M = P + Mat.identity(space, 2, P.dim_per_leg).scale(shift)
    out = []
    for col in row_relations(M):
        terms = {(alphabet.find(kind, k), alphabet.find(kind, l)): c for (k, l), c in col.items()}
        out.append(_rel_poly(space, alphabet, terms))
    return out


def preset_quantum_plane(P: Mat) -> Presentation:
    """x x (P - 1) = 0."""
    space = P.zero.space
    alphabet = coordinate_alphabet(P.dim_per_leg)
    rels = _coordinate_relations(P, alphabet, "x-coord", Ratio.of(space, -1))
    return Presentation("quantum-plane", space, alphabet,
                        RewriteSystem.from_relations(space, alphabet, rels), tuple(rels))


def calculus_relations(P: Mat, alphabet: Alphabet) -> list[NCPoly]:
    """x x (P - 1) = 0, th th (P + a) = 0 and a th^k x^l = sum_ij x^i th^j P_ij^kl."""
    space = P.zero.space
    a = Ratio.of(space, space.a)
    rels = _coordinate_relations(P, alphabet, "x-coord", Ratio.of(space, -1))
    rels += _coordinate_relations(P, alphabet, "theta", a)
    for (k, l) in P.multi_indices():
        terms = {(alphabet.find("theta", k), alphabet.find("x-coord", l)): a}
        for (i, j) in P.multi_indices():
            c = P[(i, j), (k, l)]
            if not c.is_zero():
                terms[(alphabet.find("x-coord", i), alphabet.find("theta", j))] = -c
        rels.append(_rel_poly(space, alphabet, terms))
    return rels


def preset_calculus(P: Mat) -> Presentation:
    space = P.zero.space
    alphabet = coordinate_alphabet(P.dim_per_leg, with_theta=True)
    rels = calculus_relations(P, alphabet)
    return Presentation("calculus", space, alphabet,
                        RewriteSystem.from_relations(space, alphabet, rels), tuple(rels))


def preset_theta(P: Mat) -> Presentation:
    """The exterior part th th (P + a) = 0 on its own."""
    space = P.zero.space
    full = coordinate_alphabet(P.dim_per_leg, with_theta=True)
    alphabet = Alphabet(tuple(l for l in full.letters if l.kind == "theta"))
    rels = _coordinate_relations(P, alphabet, "theta", Ratio.of(space, space.a))
    return Presentation("theta", space, alphabet,
                        RewriteSystem.from_relations(space, alphabet, rels), tuple(rels))


# -------------------- Pseudogroup --------------------
def quad_to_poly(rel: QuadRelation, space: ParamSpace, alphabet: Alphabet) -> NCPoly:
    terms = {}
    for ((i, a), (j, b)), c in rel.terms.items():
        terms[(alphabet.find("z", i, a), alphabet.find("z", j, b))] = c
    return NCPoly(space, alphabet, terms)


def pseudogroup_table(space: ParamSpace, alphabet: Alphabet) -> dict:
    """z_i^j -> sum_k z_i^k z'_k^j."""
    dbl = alphabet.doubled()
    n = space.n
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms = {(alphabet.find("z", i, k), alphabet.prime(alphabet.find("z", k, j))): 1
                     for k in range(1, n + 1)}
            table[alphabet.find("z", i, j)] = NCPoly(space, dbl, terms)
    return table


def preset_pseudogroup(space: ParamSpace, relations: list[QuadRelation] | None = None) -> Presentation:
    """Matrix entries z_i^j modulo the pseudogroup relations (or any other quadratic family)."""
    alphabet = matrix_alphabet(space.n)
    relations = relations if relations is not None else pseudogroup_relations(space)
    rels = [quad_to_poly(r, space, alphabet) for r in relations]
    return Presentation("pseudogroup", space, alphabet,
                        RewriteSystem.from_relations(space, alphabet, rels), tuple(rels),
                        pseudogroup_table(space, alphabet))


# -------------------- Factored presentation --------------------
def x_commutation(space: ParamSpace, k: int, i: int, j: int) -> Scalar:
    """c with x_k X_i^j = c X_i^j x_k for i >= j."""
    if i == j:
        return space.one()
    c = space.q(i, k) * space.q(k, j)
    if j <= k < i:
        c = c * space.a.inverse_monomial()
    return c


def y_commutation(space: ParamSpace, k: int, i: int, j: int) -> Scalar:
    """c with y_k Y_i^j = c Y_i^j y_k for i <= j."""
    if i == j:
        return space.one()
    c = space.q(i, k) * space.q(k, j)
    if i < k <= j:
        c = c * space.a
    return c


def minus_relation(rel: QuadRelation, space: ParamSpace, alphabet: Alphabet) -> NCPoly:
    """Image under z_i^a -> X_i^a x_a (i >= a, zero above the diagonal) with the lattice part dropped."""
    terms = {}
    for ((i, a), (j, b)), c in rel.terms.items():
        if i < a or j < b:
            continue
        word = tuple(alphabet.find("X", r, s) for r, s in ((i, a), (j, b)) if r > s)
        v = c * x_commutation(space, a, j, b)
        terms[word] = terms[word] + v if word in terms else v
    return NCPoly(space, alphabet, terms)


def plus_relation(rel: QuadRelation, space: ParamSpace, alphabet: Alphabet) -> NCPoly:
    """Image under z_i^a -> y_i Y_i^a (i <= a, zero below the diagonal) with the lattice part dropped."""
    terms = {}
    for ((i, a), (j, b)), c in rel.terms.items():
        if i > a or j > b:
            continue
        word = tuple(alphabet.find("Y", r, s) for r, s in ((i, a), (j, b)) if r < s)
        v = c / Ratio.of(space, y_commutation(space, j, i, a))
        terms[word] = terms[word] + v if word in terms else v
    return NCPoly(space, alphabet, terms)


def _sector_relations(space: ParamSpace, alphabet: Alphabet, project) -> list[NCPoly]:
    out = []
    for rel in pseudogroup_relations(space):
        p = project(rel, space, alphabet)
        if p.is_zero():
            continue
        if p.degree() < 2:
            raise ValueError(f"{rel.family} relation {rel.indices} leaves a nonzero remainder {p}")
        out.append(p)
    return out


def _lattice_relations(space: ParamSpace, alphabet: Alphabet) -> list[NCPoly]:
    lat = [p for p, l in enumerate(alphabet.letters) if l.is_lattice]
    out = []
    for k in range(1, space.n + 1):
        g, h = alphabet.find("z-diag", k), alphabet.find("z-diag-inv", k)
        out.append(NCPoly(space, alphabet, {(g, h): 1, (): -1}))
        out.append(NCPoly(space, alphabet, {(h, g): 1, (): -1}))
    for p in lat:
        for r in lat:
            if p < r and alphabet[p].index != alphabet[r].index:
                out.append(NCPoly(space, alphabet, {(r, p): 1, (p, r): -1}))
    return out


def serre_relations(space: ParamSpace, alphabet: Alphabet, coeffs: dict) -> list[NCPoly]:
    """coeffs {("X" | "Y", i): (r, s)} for the two Serre relations around simple index i.

    X: X_{i+1}^i X_{i+2}^i = r X_{i+2}^i X_{i+1}^i,  X_{i+2}^{i+1} X_{i+2}^i = s X_{i+2}^i X_{i+2}^{i+1}
    Y: Y_i^{i+2} Y_i^{i+1} = r Y_i^{i+1} Y_i^{i+2},  Y_i^{i+2} Y_{i+1}^{i+2} = s Y_{i+1}^{i+2} Y_i^{i+2}
    """
    out = []
    for (kind, i), (r, s) in sorted(coeffs.items()):
        if kind == "X":
            comp = alphabet.find("X", i + 2, i)
            a, b = alphabet.find("X", i + 1, i), alphabet.find("X", i + 2, i + 1)
            out.append(NCPoly(space, alphabet, {(a, comp): 1, (comp, a): -Ratio.of(space, r)}))
            out.append(NCPoly(space, alphabet, {(b, comp): 1, (comp, b): -Ratio.of(space, s)}))
        else:
            comp = alphabet.find("Y", i, i + 2)
            a, b = alphabet.find("Y", i, i + 1), alphabet.find("Y", i + 1, i + 2)
            out.append(NCPoly(space, alphabet, {(comp, a): 1, (a, comp): -Ratio.of(space, r)}))
            out.append(NCPoly(space, alphabet, {(comp, b): 1, (b, comp): -Ratio.of(space, s)}))
    return out


def factored_relations(space: ParamSpace, alphabet: Alphabet, sector: str) -> list[NCPoly]:
    n = space.n
    rels = _lattice_relations(space, alphabet)
    xs = alphabet.positions("X")
    ys = alphabet.positions("Y")
    if sector != "plus":
        rels += _sector_relations(space, alphabet, minus_relation)
        for k in range(1, n + 1):
            g, h = alphabet.find("z-diag", k), alphabet.find("z-diag-inv", k)
            for p in xs:
                i, j = alphabet[p].index
                c = Ratio.of(space, x_commutation(space, k, i, j))
                rels.append(NCPoly(space, alphabet, {(g, p): 1, (p, g): -c}))
                rels.append(NCPoly(space, alphabet, {(h, p): 1, (p, h): -c.inverse()}))
    if sector != "minus":
        rels += _sector_relations(space, alphabet, plus_relation)
        for k in range(1, n + 1):
            g, h = alphabet.find("z-diag", k), alphabet.find("z-diag-inv", k)
            for p in ys:
                i, j = alphabet[p].index
                c = Ratio.of(space, y_commutation(space, k, i, j))
                rels.append(NCPoly(space, alphabet, {(p, g): 1, (g, p): -c.inverse()}))
                rels.append(NCPoly(space, alphabet, {(p, h): 1, (h, p): -c}))
    if sector == "full":
        for p in xs:
            for r in ys:
                rels.append(NCPoly(space, alphabet, {(r, p): 1, (p, r): -1}))
    return rels


def minus_table(space: ParamSpace, alphabet: Alphabet) -> dict:
    """x_k -> x_k x'_k, X_i^j -> sum_{j<=k<=i} X_i^k x_k x_j^-1 X'_k^j."""
    dbl = alphabet.doubled()
    P = alphabet.prime
    table = {}
    for k in range(1, space.n + 1):
        for kind in ("z-diag", "z-diag-inv"):
            p = alphabet.find(kind, k)
            table[p] = NCPoly(space, dbl, {(p, P(p)): 1})
    for p in alphabet.positions("X"):
        i, j = alphabet[p].index
        terms = {}
        for k in range(j, i + 1):
            w = ((alphabet.find("X", i, k),) if k < i else ()) + \
                (alphabet.find("z-diag", k), alphabet.find("z-diag-inv", j)) + \
                ((P(alphabet.find("X", k, j)),) if k > j else ())
            terms[w] = 1
        table[p] = NCPoly(space, dbl, terms)
    return table


def plus_table(space: ParamSpace, alphabet: Alphabet) -> dict:
    """y_k -> y_k y'_k, Y_i^j -> sum_{i<=k<=j} Y_i^k y'_i^-1 y'_k Y'_k^j."""
    dbl = alphabet.doubled()
    P = alphabet.prime
    table = {}
    for k in range(1, space.n + 1):
        for kind in ("z-diag", "z-diag-inv"):
            p = alphabet.find(kind, k)
            table[p] = NCPoly(space, dbl, {(p, P(p)): 1})
    for p in alphabet.positions("Y"):
        i, j = alphabet[p].index
        terms = {}
        for k in range(i, j + 1):
            w = ((alphabet.find("Y", i, k),) if k > i else ()) + \
                (P(alphabet.find("z-diag-inv", i)), P(alphabet.find("z-diag", k))) + \
                ((P(alphabet.find("Y", k, j)),) if k < j else ())
            terms[w] = 1
        table[p] = NCPoly(space, dbl, terms)
    return table


def preset_factored(space: ParamSpace, sector: str = "full", serre: dict | None = None) -> Presentation:
    """X_i^j (i>j), lattice letters and their inverses, Y_i^j (i<j).

    sector "minus" and "plus" are the two triangular quotients, each carrying
    its coproduct table; "full" joins them with X and Y commuting.
    """
    alphabet = factored_alphabet(space.n, sector)
    rels = factored_relations(space, alphabet, sector)
    if serre:
        rels += serre_relations(space, alphabet, serre)
    table = {"minus": minus_table, "plus": plus_table}.get(sector)
    return Presentation(f"factored-{sector}", space, alphabet,
                        RewriteSystem.from_relations(space, alphabet, rels), tuple(rels),
                        table(space, alphabet) if table else None)
