from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction

from ..ncalg import NCPoly, factorization_images
from ..ring import Ratio
from ..rmatrix import build_R, explicit_pi, sl_reduce
from ..tensor import Mat, kron
from .algebra import FactoredAlgebra
from .functional import Functional, H, P, Q, character, counit, pair
from .relations import RelationResidual


def fundamental_rep(F: Functional) -> Mat:
    """rho(F)_i^j = <F, z_i^j> with z_i^j expanded in the factored basis."""
    algebra = F.algebra
    images = factorization_images(algebra.pres)
    out = Mat.zeros(algebra.space)
    for (i, j), img in images.items():
        out.entries[i - 1, j - 1] = pair(F, img)
    return out


def functional_image(algebra: FactoredAlgebra, p: NCPoly, images: dict) -> Functional:
    """Image of p under the algebra map sending letter position x to images[x]."""
    out = Functional(algebra)
    for w, c in p.terms.items():
        term = counit(algebra)
        for x in w:
            term = term * images[x]
        out = out + term.scale(c)
    return out


def check_multiplicative(algebra: FactoredAlgebra, names: list[str] | None = None) -> list[str]:
    """Pairs of generators with rho(FG) != rho(F) rho(G)."""
    gens = {}
    n = algebra.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i > j:
                gens[f"P{i}^{j}"] = P(algebra, i, j)
            elif i < j:
                gens[f"Q{i}^{j}"] = Q(algebra, i, j)
        gens[f"H{i}"] = H(algebra, i)
    names = names or list(gens)
    reps = {name: fundamental_rep(gens[name]) for name in names}
    bad = []
    for f in names:
        for g in names:
            if fundamental_rep(gens[f] * gens[g]) != reps[f] @ reps[g]:
                bad.append(f"{f}*{g}")
    return bad


# -------------------- Phi and Phi' --------------------
@dataclass(frozen=True)
class PhiMaps:
    """Letter position -> Functional for the two maps into the dual."""
    phi: dict
    phi_prime: dict


def phi_maps(algebra: FactoredAlgebra) -> PhiMaps:
    """Phi:  X_j^i -> (1/a-1) q^{ji} Q_i^j, Y -> 0, z_k -> prod_i (q^{ki})^{H_i} a^{H_{k+1}+...+H_N}.
    Phi': Y_i^j -> (a-1) q^{ji} P_j^i, X -> 0, z_k -> prod_i (q^{ki})^{H_i} a^{-(H_1+...+H_{k-1})}.
    """
    space, alpha, n = algebra.space, algebra.alphabet, algebra.n
    a = Ratio.of(space, space.a)
    zero = Functional(algebra)
    phi, phi_prime = {}, {}
    for p in algebra.xs:
        j, i = alpha[p].index
        phi[p] = Q(algebra, i, j).scale((a.inverse() - 1) * Ratio.of(space, space.q(j, i)))
        phi_prime[p] = zero
    for p in algebra.ys:
        i, j = alpha[p].index
        phi[p] = zero
        phi_prime[p] = P(algebra, j, i).scale((a - 1) * Ratio.of(space, space.q(j, i)))
    for k in range(1, n + 1):
        up = [Ratio.of(space, space.q(k, i)) * (a if i > k else 1) for i in range(1, n + 1)]
        down = [Ratio.of(space, space.q(k, i)) / (a if i < k else 1) for i in range(1, n + 1)]
        phi[alpha.find("z-diag", k)] = character(algebra, up)
        phi[alpha.find("z-diag-inv", k)] = character(algebra, [c.inverse() for c in up])
        phi_prime[alpha.find("z-diag", k)] = character(algebra, down)
        phi_prime[alpha.find("z-diag-inv", k)] = character(algebra, [c.inverse() for c in down])
    return PhiMaps(phi, phi_prime)


@dataclass(frozen=True)
class PhiReport:
    lattice_matches: bool         # rho(Phi(z_k)) = pi(z_k^k) for every k
    x_matches: bool               # rho(Phi(X_j^i)) = pi(z_j^i) pi(z_i^i)^-1
    lattice_prime_matches: bool
    y_ratio: Ratio | None         # rho(Phi'(Y)) = y_ratio * pi'(z_i^i)^-1 pi'(z_i^j), common to all Y
    relations: tuple[RelationResidual, ...]

    @property
    def homomorphisms(self) -> bool:
        return all(r.holds for r in self.relations)


def check_phi(algebra: FactoredAlgebra) -> PhiReport:
    """Compare rho o Phi and rho o Phi' with the closed-form representations and push every defining relation through both maps."""
    space, alpha, n = algebra.space, algebra.alphabet, algebra.n
    maps = phi_maps(algebra)
    pi, pi_prime = explicit_pi(space), explicit_pi(space, prime=True)
    lattice = all(fundamental_rep(maps.phi[alpha.find("z-diag", k)]) == pi[(k, k)] for k in range(1, n + 1))
    lattice_prime = all(fundamental_rep(maps.phi_prime[alpha.find("z-diag", k)]) == pi_prime[(k, k)]
                        for k in range(1, n + 1))
    x_ok = True
    for p in algebra.xs:
        j, i = alpha[p].index
        expected = pi[(j, i)] @ pi[(i, i)].inverse()
        x_ok = x_ok and fundamental_rep(maps.phi[p]) == expected
    ratios = set()
    for p in algebra.ys:
        i, j = alpha[p].index
        expected = pi_prime[(i, i)].inverse() @ pi_prime[(i, j)]
        got = fundamental_rep(maps.phi_prime[p])
        _, _, e = expected.first_nonzero()
        r = got.entries[j - 1, i - 1] / e
        ratios.add(r if got == expected.scale(r) else None)
    y_ratio = ratios.pop() if len(ratios) == 1 else None
    relations = []
    for rel in algebra.pres.relations:
        label = algebra.alphabet.word_str(rel.leading()[0])
        relations.append(RelationResidual(f"Phi({label})", "phi", functional_image(algebra, rel, maps.phi)))
        relations.append(RelationResidual(f"Phi'({label})", "phi-prime",
                                          functional_image(algebra, rel, maps.phi_prime)))
    return PhiReport(lattice, x_ok, lattice_prime, y_ratio, tuple(relations))


# -------------------- Universal R --------------------
def _cartan_table(algebra: FactoredAlgebra, maps: PhiMaps) -> list[list[Ratio]]:
    """d[i][j] = rho(Phi(z_i))_j^j."""
    alpha = algebra.alphabet
    out = []
    for i in range(1, algebra.n + 1):
        rho = fundamental_rep(maps.phi[alpha.find("z-diag", i)])
        out.append([rho.entries[j, j] for j in range(algebra.n)])
    return out


def _sl_project(d: list[list[Ratio]]) -> list[list[Ratio]]:
    """H -> M - 1/N in both slots of the Cartan factor."""
    n = len(d)
    inv_n = Fraction(-1, n)
    total = Ratio.of(d[0][0].space, 1)
    rows, cols = [], []
    for r in range(n):
        prod = d[r][0]
        for s in range(1, n):
            prod = prod * d[r][s]
        rows.append(prod)
        total = total * prod
    for s in range(n):
        prod = d[0][s]
        for r in range(1, n):
            prod = prod * d[r][s]
        cols.append(prod)
    return [[d[r][s] * rows[r] ** inv_n * cols[s] ** inv_n * total ** Fraction(1, n * n) for s in range(n)]
            for r in range(n)]


def universal_R_fundamental(algebra: FactoredAlgebra, sl: bool = False, swapped: bool = False) -> Mat:
    """prod_{X order} (1 + rho(P_i^j) (x) rho(Phi(X_i^j))) times the Cartan factor.

    The q-exponentials stop after the linear term since rho(P)^2 = 0. sl projects the
    Cartan factor to traceless H; swapped puts rho(Phi(X)) in the first slot.
    """
    space, alpha, n = algebra.space, algebra.alphabet, algebra.n
    maps = phi_maps(algebra)
    I = Mat.identity(space, 2)
    R = I
    for p in algebra.xs:
        i, j = alpha[p].index
        left, right = fundamental_rep(P(algebra, i, j)), fundamental_rep(maps.phi[p])
        R = R @ (I + (kron(right, left) if swapped else kron(left, right)))
    d = _cartan_table(algebra, maps)
    if sl:
        d = _sl_project(d)
    D = Mat.zeros(space, 2)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            D[(i, j), (i, j)] = d[j - 1][i - 1] if swapped else d[i - 1][j - 1]
    return R @ D


@dataclass(frozen=True)
class UniversalRReport:
    convention: str | None   # "P-first", "Phi-first" or None when neither reproduces R
    residual: Mat


def universal_R_report(algebra: FactoredAlgebra) -> UniversalRReport:
    target = build_R(algebra.space)
    res = universal_R_fundamental(algebra) - target
    if res.is_zero():
        return UniversalRReport("P-first", res)
    flipped = universal_R_fundamental(algebra, swapped=True) - target
    return UniversalRReport("Phi-first" if flipped.is_zero() else None, res)


def sl_residual(algebra: FactoredAlgebra) -> Mat:
    """Projected universal R minus a^{-(N-1)/(2N)} R_sl."""
    space, n = algebra.space, algebra.n
    scale = Ratio.of(space, space.a ** Fraction(-(n - 1), 2 * n))
    return universal_R_fundamental(algebra, sl=True) - sl_reduce(space).R_sl.scale(scale)


# -------------------- UT in the fundamental representation --------------------
@dataclass(frozen=True)
class UTEvaluation:
    lower: Mat
    diagonal: Mat
    upper: Mat
    product: Mat
    mismatches: tuple[tuple[int, int], ...]   # entries differing from the factorization of z_i^j
    coproduct_mismatches: tuple[tuple[int, int], ...] = ()   # entries with D(T_i^j) != sum_k T_i^k (x) T_k^j


def evaluate_UT_fundamental(algebra: FactoredAlgebra) -> UTEvaluation:
    """prod e_a^{X P} e^{tau H} prod e_{1/a}^{Y Q} with rho substituted for P, H, Q and z_k for e^{tau_k}."""
    space, alpha, n = algebra.space, algebra.alphabet, algebra.n
    pres = algebra.pres
    zero = NCPoly.zero(space, alpha)

    def identity():
        M = Mat.zeros(space, 1, n, zero)
        for k in range(n):
            M.entries[k, k] = NCPoly.const(space, alpha)
        return M

    def linear(letter: int, rho: Mat) -> Mat:
        word = NCPoly.word(space, alpha, (letter,))
        return rho.map(lambda c: word.scale(c), zero=zero)

    lower = identity()
    for p in algebra.xs:
        i, j = alpha[p].index
        lower = lower @ (identity() + linear(p, fundamental_rep(P(algebra, i, j))))
    diagonal = Mat.zeros(space, 1, n, zero)
    for k in range(1, n + 1):
        diagonal = diagonal + linear(alpha.find("z-diag", k), fundamental_rep(H(algebra, k)))
    upper = identity()
    for p in algebra.ys:
        i, j = alpha[p].index
        upper = upper @ (identity() + linear(p, fundamental_rep(Q(algebra, i, j))))
    product = (lower @ diagonal @ upper).map(pres.nf, zero=zero)
    images = factorization_images(pres)
    bad = tuple((i, j) for (i, j), img in sorted(images.items())
                if product.entries[i - 1, j - 1] != pres.nf(img))
    return UTEvaluation(lower.map(pres.nf, zero=zero), diagonal, upper.map(pres.nf, zero=zero), product, bad,
                        matrix_coproduct_mismatches(algebra, product))


def _monos(algebra: FactoredAlgebra, p: NCPoly) -> dict:
    """Normal-ordered p as {(X word, lattice exponent, Y word): Ratio}."""
    alpha = algebra.alphabet
    out = {}
    for w, c in p.terms.items():
        xw = tuple(x for x in w if alpha[x].kind == "X")
        yw = tuple(x for x in w if alpha[x].kind == "Y")
        u = [0] * algebra.n
        for x in w:
            if alpha[x].kind == "z-diag":
                u[alpha[x].index[0] - 1] += 1
            elif alpha[x].kind == "z-diag-inv":
                u[alpha[x].index[0] - 1] -= 1
        key = (xw, tuple(u), yw)
        out[key] = out[key] + c if key in out else c
    return out


def _coproduct_monos(algebra: FactoredAlgebra, p: NCPoly, bounds) -> dict:
    """D(p) through the Gauss decomposition, lattice exponents specialized to those of p."""
    out = {}
    for (xw, u, yw), c in _monos(algebra, p).items():
        for (m1, m2), f in algebra.coproduct_basis((xw, yw), bounds).items():
            key = tuple((x, tuple(a + s * b for a, b in zip(v, u)), y) for x, s, v, y in (m1, m2))
            val = f.evaluate(u) * c
            out[key] = out[key] + val if key in out else val
    return {k: v for k, v in out.items() if not v.is_zero()}


def matrix_coproduct_mismatches(algebra: FactoredAlgebra, T: Mat) -> tuple[tuple[int, int], ...]:
    """Entries with D(T_i^j) != sum_k T_i^k (x) T_k^j, both sides cut at height N-1 per leg and sector."""
    n = algebra.n
    bounds = (n - 1,) * 4
    height = algebra.height
    rows = [[_monos(algebra, T.entries[i, j]) for j in range(n)] for i in range(n)]

    def inside(key):
        (x1, _, y1), (x2, _, y2) = key
        return max(height(x1), height(y1), height(x2), height(y2)) <= n - 1

    bad = []
    for i in range(n):
        for j in range(n):
            expected = {}
            for k in range(n):
                for l1, c1 in rows[i][k].items():
                    for l2, c2 in rows[k][j].items():
                        key = (l1, l2)
                        expected[key] = expected[key] + c1 * c2 if key in expected else c1 * c2
            expected = {k: v for k, v in expected.items() if inside(k) and not v.is_zero()}
            if _coproduct_monos(algebra, T.entries[i, j], bounds) != expected:
                bad.append((i + 1, j + 1))
    return tuple(bad)
