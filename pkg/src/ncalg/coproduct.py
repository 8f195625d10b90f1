from __future__ import annotations
from dataclasses import dataclass

from ..ring import ParamSpace, Ratio, q_binomial
from .alphabet import Alphabet, Letter
from .poly import NCPoly
from .rewrite import RewriteSystem


def leg_alphabet(alphabet: Alphabet, legs: int) -> Alphabet:
    """legs copies of the alphabet; copy t carries t-1 primes and sorts after copy t-1."""
    if legs == 2:
        return alphabet.doubled()
    letters = list(alphabet.letters)
    for t in range(1, legs):
        letters += [Letter(l.name + "'" * (t - 1), l.kind, l.index, True) for l in alphabet.letters]
    return Alphabet(tuple(letters))


def _shift(p: NCPoly, alphabet: Alphabet, offset: int) -> NCPoly:
    return NCPoly._raw(p.space, alphabet, {tuple(x + offset for x in w): c for w, c in p.terms.items()})


def leg_system(system: RewriteSystem, legs: int) -> RewriteSystem:
    """Tensor power of a rewriting system: each leg keeps its rules, letters of different legs commute."""
    m = len(system.alphabet)
    alphabet = leg_alphabet(system.alphabet, legs)
    rules = {}
    for t in range(legs):
        for lhs, rhs in system.rules.items():
            rules[tuple(x + t * m for x in lhs)] = _shift(rhs, alphabet, t * m)
    for hi in range(1, legs):
        for lo in range(hi):
            for u in range(m):
                for v in range(m):
                    rules[(u + hi * m, v + lo * m)] = NCPoly._raw(
                        system.space, alphabet, {(v + lo * m, u + hi * m): Ratio.one(system.space)})
    return RewriteSystem(system.space, alphabet, rules, system.budget)


def coproduct(p: NCPoly, pres) -> NCPoly:
    """Image of p under the generator table, normal-formed in the doubled system."""
    if pres.coproduct_table is None:
        raise ValueError(f"{pres.name} has no coproduct table")
    missing = {x for w in p.terms for x in w} - set(pres.coproduct_table)
    if missing:
        raise KeyError(f"no coproduct for {', '.join(str(pres.alphabet[x]) for x in sorted(missing))}")
    return pres.doubled.normal_form(p.map_letters(pres.coproduct_table, pres.doubled.alphabet))


def check_coproduct_homomorphism(pres) -> list[tuple[NCPoly, NCPoly]]:
    """Defining relations whose coproduct image does not vanish, with the residual."""
    out = []
    for rel in pres.relations:
        res = coproduct(rel, pres)
        if not res.is_zero():
            out.append((rel, res))
    return out


def check_coassociativity(pres) -> list[str]:
    """(D x id) D = (id x D) D on every generator with a table entry."""
    m = len(pres.alphabet)
    triple = leg_system(pres.system, 3)
    alpha3 = triple.alphabet
    left_img, right_img = {}, {}
    for p, img in pres.coproduct_table.items():
        # images over three legs: leg1+leg2 for the first factor, leg2+leg3 for the second
        left_img[p] = NCPoly._raw(pres.space, alpha3, dict(img.terms))
        left_img[p + m] = NCPoly._raw(pres.space, alpha3, {(p + 2 * m,): Ratio.one(pres.space)})
        right_img[p] = NCPoly._raw(pres.space, alpha3, {(p,): Ratio.one(pres.space)})
        right_img[p + m] = _shift(img, alpha3, m)
    bad = []
    for p, img in pres.coproduct_table.items():
        lhs = triple.normal_form(img.map_letters(left_img, alpha3))
        rhs = triple.normal_form(img.map_letters(right_img, alpha3))
        if lhs != rhs:
            bad.append(f"{pres.alphabet[p]}: {lhs - rhs}")
    return bad


# -------------------- Leading terms of D(X_i^j) --------------------
@dataclass(frozen=True)
class BAReport:
    indices: tuple[int, int]
    ratio: Ratio          # BA = ratio * AB
    literal_holds: bool   # BA = a BA, read as written


def _AB(pres, i: int, j: int) -> tuple[NCPoly, NCPoly]:
    alpha = pres.alphabet
    dbl = pres.doubled.alphabet
    X = alpha.find("X", i, j)
    A = NCPoly.word(pres.space, dbl, (X,))
    B = NCPoly.word(pres.space, dbl, (alpha.find("z-diag", i), alpha.find("z-diag-inv", j), alpha.prime(X)))
    return A, B


def check_BA_relation(pres, i: int = 2, j: int = 1) -> BAReport:
    """A = X_i^j (x) 1, B = x_i x_j^-1 (x) X_i^j; solves BA = ratio * AB in the doubled minus sector."""
    A, B = _AB(pres, i, j)
    nf = pres.doubled.normal_form
    BA, AB = nf(B * A), nf(A * B)
    ratio = _proportional(BA, AB)
    if ratio is None:
        raise ValueError(f"BA is not proportional to AB for X{i}^{j}")
    a = Ratio.of(pres.space, pres.space.a)
    literal = (BA - BA.scale(a)).is_zero()
    return BAReport((i, j), ratio, literal)


def _proportional(p: NCPoly, q: NCPoly) -> Ratio | None:
    """r with p = r q, or None."""
    if q.is_zero():
        return Ratio.zero(p.space) if p.is_zero() else None
    w, c = q.leading()
    r = p.coefficient(w) / c
    return r if (p - q.scale(r)).is_zero() else None


def check_power_expansion(pres, n_max: int = 4, i: int = 2, j: int = 1) -> list[int]:
    """D(X)^n = sum_k [n k]_a A^{n-k} B^k when D(X) = A + B, i.e. for simple X on gl(2)."""
    space: ParamSpace = pres.space
    A, B = _AB(pres, i, j)
    nf = pres.doubled.normal_form
    X = NCPoly.gen(space, pres.alphabet, f"X{i}^{j}")
    dX = coproduct(X, pres)
    bad = []
    for n in range(1, n_max + 1):
        lhs = nf(dX ** n)
        rhs = NCPoly.zero(space, A.alphabet)
        for k in range(n + 1):
            rhs = rhs + ((A ** (n - k)) * (B ** k)).scale(q_binomial(n, k, space))
        if lhs != nf(rhs):
            bad.append(n)
    return bad
