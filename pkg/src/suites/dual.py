"""Suites over the dual pairing: quantum group relations, representations, roots of unity, Serre constants."""
from __future__ import annotations

from ..duality import (
    FactoredAlgebra,
    cartan_relations,
    check_multiplicative,
    check_phi,
    classical_degeneration,
    commutator,
    derive_coefficients,
    distant_relations,
    evaluate_UT_fundamental,
    expected_factorial,
    factorial_pairings,
    pq_relations,
    pq_rhs,
    q_readings,
    root_extension,
    simple_P,
    simple_Q,
    sl_residual,
    universal_R_report,
    verify_coproducts,
)
from ..ncalg import certify_serre, preset_factored, serre_coefficients
from ..ring import ParamSpace, Ratio
from ..utils.constants import ROOT_ORDERS
from .context import SuiteContext, flag, list_outcome, residual_outcome

PAIRING_MAX = 5


# -------------------- duality --------------------
def duality_suite(ctx: SuiteContext):
    space, n, degree = ctx.space, ctx.space.n, ctx.config.degree
    alg = FactoredAlgebra(space, degree)

    for kind in ("P", "Q"):
        def pairings(kind=kind):
            table = factorial_pairings(alg, min(degree, PAIRING_MAX), kind)
            bad = [f"<{kind}^{i}, {j}>" for (i, j), v in sorted(table.items())
                   if v != (expected_factorial(space, i, kind) if i == j else 0)]
            return list_outcome(bad, "wrong pairings")
        ctx.record(f"duality.pairing.{kind}", "q-factorial", pairings)

    ctx.record("duality.cartan", "cartan", lambda: residual_outcome(cartan_relations(alg)))
    ctx.record("duality.pq", "pq-commutator", lambda: residual_outcome(pq_relations(alg)))
    ctx.record("duality.pq.wrong_scalar", "pq-commutator", lambda: flag(
        (commutator(simple_P(alg, 1), simple_Q(alg, 1)) - pq_rhs(alg, 1).scale(Ratio.of(space, space.a))).is_zero(),
        "residual 0", "residual nonzero"))
    if n >= 4:
        ctx.record("duality.distant", "distant", lambda: residual_outcome(distant_relations(alg)))
    if n >= 3:
        def readings():
            r = q_readings(alg)
            if not r.distant_holds:
                return "fail", "distant reading fails", {}
            if r.adjacent_holds:
                return "pass", "both readings hold", {}
            return "derived", "adjacent reading has no quommutation constant", {"reading": "|i-j| > 1"}
        ctx.record("duality.q-readings", "distant", readings)

    co = FactoredAlgebra(space, min(degree, 3))
    ctx.record("duality.coproduct", "coproduct", lambda: residual_outcome(verify_coproducts(co)))

    rep = alg if degree >= 2 * (n - 1) else FactoredAlgebra(space, 2 * (n - 1))
    ctx.record("duality.rep.multiplicative", "representation",
               lambda: list_outcome(check_multiplicative(rep), "non-multiplicative products"))

    def phi():
        report = check_phi(rep)
        if not (report.lattice_matches and report.x_matches and report.lattice_prime_matches):
            return "fail", "fundamental image differs from the closed form", {}
        if not report.homomorphisms:
            first = next(r for r in report.relations if not r.holds)
            return "fail", f"{first.name}: {first.witness()}", {}
        if report.y_ratio is None:
            return "fail", "Phi'(Y) not proportional to the closed form", {}
        if report.y_ratio.is_one():
            return "pass", "Phi and Phi' match", {}
        return "derived", "Phi'(Y) carries an extra scalar", {"y_ratio": report.y_ratio}
    ctx.record("duality.phi", "phi", phi)

    def universal():
        report = universal_R_report(rep)
        if report.convention == "P-first":
            return "pass", "reproduces R with P in the first slot", {}
        if report.convention is None:
            return "fail", f"{report.residual.nonzero_count()} nonzero entries", {}
        return "derived", "reproduces R with the slots swapped", {"convention": report.convention}
    ctx.record("duality.universal-r", "universal-r", universal)
    ctx.record("duality.sl-projection", "universal-r",
               lambda: flag(sl_residual(rep).is_zero(), "residual 0", "projected R differs from R_sl"))

    def ut():
        ev = evaluate_UT_fundamental(rep)
        bad = [f"z{i}^{j}" for i, j in ev.mismatches]
        bad += [f"D(T{i}^{j})" for i, j in ev.coproduct_mismatches]
        return list_outcome(bad, "mismatched entries")
    ctx.record("duality.ut", "universal-t", ut)


# -------------------- roots --------------------
def roots_suite(ctx: SuiteContext):
    """gl(2) at a = zeta_K for the configured root, or every order in ROOT_ORDERS."""
    space = ParamSpace(2)
    orders = (ctx.config.root,) if ctx.config.root else ROOT_ORDERS
    reports = {}
    for K in orders:
        report = reports[K] = root_extension(space, K)
        ctx.record(f"roots.K{K}.recursion", "gexp", lambda: flag(
            not report.recursion_failures and report.qint_vanishes,
            f"recursion holds to k={2 * K + 1}, [K] = 0", f"{report.recursion_failures}"))
        ctx.record(f"roots.K{K}.pole-free", "root-limit",
                   lambda: flag(report.pole_free, "P' and Q' regular", f"pole at {report.pole_witness}"))
        ctx.record(f"roots.K{K}.power", "root-limit",
                   lambda: flag(report.power_vanishes, "P^K pairs to 0", "P^K survives"))
        ctx.record(f"roots.K{K}.relations", "root-relations", lambda: residual_outcome(report.relations))

        def pq(report=report):
            if report.pq_coefficient is None or report.pq_at_root is None:
                return "fail", "[P,Q'] not proportional to the stated shape", {}
            if report.pq_matches_stated:
                return "pass", "coefficient a-1 at the root", {}
            return "derived", "coefficient differs from a-1 at the root", {
                "generic": report.pq_coefficient, "at_root": report.pq_at_root, "stated": report.stated_at_root}
        ctx.record(f"roots.K{K}.pq", "root-relations", pq)
    ctx.record("roots.power.generic", "root-limit", lambda: flag(
        reports[orders[0]].p_prime.is_zero(), "P^K pairs to 0", "P^K nonzero at generic a"))

    def classical():
        report = classical_degeneration(space)
        return flag(report.holds, "F_k = p^k/k!, <P^n, X^n> = n!, R = 1",
                    f"recursion={report.recursion_failures}, pairings={report.pairings}, R=1: {report.r_identity}")
    ctx.record("roots.classical", "classical", classical)


# -------------------- derive --------------------
def derive_suite(ctx: SuiteContext):
    """Serre coefficients; gl(3) is the smallest case, so smaller n is lifted to 3."""
    n = max(ctx.space.n, 3)
    space = ctx.space if ctx.space.n == n else ParamSpace(n)
    alg = FactoredAlgebra(space, max(ctx.config.degree, 4))
    solutions = derive_coefficients(alg)
    for sol in solutions:
        tag = f"{sol.kind}{sol.index}"

        def solved(sol=sol):
            if not sol.solved:
                return "fail", "no coefficients make both Serre relations vanish", {}
            return "derived", "unique at the checked degree", {"k": sol.k_root, "r": sol.r, "s": sol.s,
                                                               "k_stated": sol.k_stated}
        ctx.record(f"derive.serre.{tag}", "serre", solved)

        def literal(sol=sol):
            if sol.r_literal is None or sol.s_literal is None:
                return "fail", "no r, s for the stated k", {}
            return "derived", "stated k", {"r": sol.r_literal, "s": sol.s_literal}
        ctx.record(f"derive.serre.{tag}.literal", "serre", literal)

    wrong = [s for s in solutions if s.kind == "P"]
    ctx.record("derive.serre.wrong_k", "serre", lambda: flag(
        all(s.r_wrong_k is not None for s in wrong), "a^2 k solvable", "no r for a^2 k"))

    def algebra_side():
        minus = preset_factored(space, "minus")
        constants, bad = {}, []
        for i in range(1, n - 1):
            r, s = serre_coefficients(minus, "X", i)
            if r is None or s is None:
                bad.append(f"X{i}")
                continue
            constants[f"r{i}"], constants[f"s{i}"] = r, s
            bad += certify_serre(minus, {("X", i): (r, s)})
        if bad:
            return "fail", f"{len(bad)} Serre relations survive", {}
        return "derived", "factored X sector", constants
    ctx.record("derive.serre.algebra", "serre", algebra_side)
