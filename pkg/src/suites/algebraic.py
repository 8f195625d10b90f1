"""Matrix-level and rewriting suites: R/P identities, presentations, sl(N) reduction, the gl(3) deformation."""
from __future__ import annotations
from math import comb

from ..ncalg import (
    check_BA_relation,
    check_coproduct_homomorphism,
    derived_simple_relations,
    preset_factored,
    preset_pseudogroup,
    preset_quantum_plane,
    preset_theta,
    substitute_factorization,
    verify_braid_equivalence,
)
from ..ring import ParamSpace
from ..rmatrix import (
    QuadRelation,
    RFamily,
    build_calP,
    build_P,
    build_R,
    check_block_spectrum,
    check_braid,
    check_constraint,
    check_cubic,
    check_hat_fixed,
    check_hecke,
    check_inverse,
    check_kappa_product,
    check_rescaling,
    check_ybe,
    corrupted_R,
    cyclic_P,
    esoteric_gl3,
    kernel_violations,
    pseudogroup_relations,
    rep_pi,
    rep_pi_prime,
    sl_reduce,
    verify_rep,
)
from ..utils import log
from .context import SuiteContext, flag, list_outcome, mat_outcome


# -------------------- matrix --------------------
def matrix_suite(ctx: SuiteContext):
    space, env = ctx.space, ctx.assignment
    fam = RFamily.build(space)
    ctx.record("matrix.hecke", "hecke", lambda: mat_outcome(check_hecke(fam.P), env))
    ctx.record("matrix.braid", "braid", lambda: mat_outcome(check_braid(fam.P), env))
    ctx.record("matrix.ybe", "yang-baxter", lambda: mat_outcome(check_ybe(fam.R), env))
    ctx.record("matrix.inverse", "inverse", lambda: mat_outcome(check_inverse(fam.R, fam.Rinv), env))
    ctx.record("matrix.cubic", "conjugation-cubic",
               lambda: mat_outcome(check_cubic(build_calP(fam.P, fam.Pinv())), env))
    ctx.record("matrix.spectrum", "hecke", lambda: list_outcome(check_block_spectrum(fam.P), "bad blocks"))
    ctx.record("matrix.hecke.corrupted", "hecke",
               lambda: mat_outcome(check_hecke(build_P(corrupted_R(space))), env))

    def reps():
        bad = [rel.family + str(rel.indices) for rel, _ in verify_rep(rep_pi(space), space)]
        bad += [f"pi'{rel.family}{rel.indices}" for rel, _ in verify_rep(rep_pi_prime(space), space)]
        bad += [f"pi(z{i}^{j}) != 0" for i, j in kernel_violations(rep_pi(space), upper=True)]
        bad += [f"pi'(z{i}^{j}) != 0" for i, j in kernel_violations(rep_pi_prime(space), upper=False)]
        return list_outcome(bad, "failing relations")
    ctx.record("matrix.representations", "representation", reps)


# -------------------- algebra --------------------
def _corrupted_pseudogroup(space: ParamSpace):
    """Cross relations with the swapped term multiplied by a."""
    rels = []
    for rel in pseudogroup_relations(space):
        if rel.family == "cross":
            lead, swapped = list(rel.terms)
            rel = QuadRelation(rel.family, rel.indices, {lead: rel.terms[lead], swapped: rel.terms[swapped] * space.a})
        rels.append(rel)
    return preset_pseudogroup(space, rels)


def algebra_suite(ctx: SuiteContext):
    space, n = ctx.space, ctx.space.n
    P = build_P(build_R(space))
    plane = preset_quantum_plane(P)
    theta = preset_theta(P)
    ctx.record("algebra.confluence.plane", "quantum-plane",
               lambda: list_outcome(plane.system.local_confluence(3), "unresolved overlaps"))
    if n <= 3:
        pg = preset_pseudogroup(space)
        ctx.record("algebra.confluence.pseudogroup", "pseudogroup",
                   lambda: list_outcome(pg.system.local_confluence(3), "unresolved overlaps"))

        def dims():
            bad = [f"plane d={d}" for d in (1, 2, 3) if plane.system.graded_dim(d) != comb(n + d - 1, d)]
            bad += [f"theta d={d}" for d in (1, 2, 3) if theta.system.graded_dim(d) != comb(n, d)]
            bad += [f"pseudogroup d={d}" for d in (1, 2) if pg.system.graded_dim(d) != comb(n * n + d - 1, d)]
            return list_outcome(bad, "dimension mismatches")
        ctx.record("algebra.dimensions", "flatness", dims)
    ctx.record("algebra.confluence.corrupted", "pseudogroup",
               lambda: list_outcome(_corrupted_pseudogroup(space).system.local_confluence(3), "unresolved overlaps"))
    ctx.record("algebra.factorization", "factorization",
               lambda: list_outcome(substitute_factorization(space), "surviving relations"))
    ctx.record("algebra.coproduct", "coproduct",
               lambda: list_outcome(check_coproduct_homomorphism(preset_pseudogroup(space)), "failing relations"))

    def braid():
        eq = verify_braid_equivalence(P)
        return flag(eq.braid_holds and eq.consistent, "braid holds, calculus confluent",
                    f"braid={eq.braid_holds}, {len(eq.overlaps)} overlaps")
    ctx.record("algebra.braid.equivalence", "braid", braid)

    def cyclic():
        # needs a 3x3 block structure
        eq = verify_braid_equivalence(cyclic_P(space if n >= 3 else ParamSpace(3)))
        summary = f"braid={eq.braid_holds}, {len(eq.overlaps)} overlaps, consistent={eq.consistent}"
        return ("pass" if eq.braid_holds else "fail"), summary, {}
    ctx.record("algebra.braid.cyclic", "braid", cyclic)

    def ba():
        rep = check_BA_relation(preset_factored(space, "minus"))
        if rep.literal_holds:
            return "pass", "BA = a BA holds as written", {}
        return "derived", "BA = ratio AB", {"ratio": rep.ratio}
    ctx.record("algebra.ba", "ba-exchange", ba)

    if n >= 3:
        def composite():
            rels = derived_simple_relations(space)
            off = [r for r in rels if not r.holds_as_stated]
            if any(not r.remainder_ok for r in rels):
                return "fail", "quommutator remainder not proportional to the composite", {}
            if not off:
                return "pass", f"{len(rels)} rules as stated", {}
            constants = {}
            for r in off:
                key = f"{r.name}{''.join(map(str, r.indices))}"
                constants[f"{key}.k"] = r.derived_k
                constants[f"{key}.coefficient"] = r.derived_coefficient
            return "derived", f"{len(off)} of {len(rels)} rules differ from the stated coefficients", constants
        ctx.record("algebra.composite", "quommutation", composite)
    log.progress(f"algebra suite done for n={n}")


# -------------------- sl-reduce --------------------
def sl_suite(ctx: SuiteContext):
    space, env = ctx.space, ctx.assignment
    red = sl_reduce(space)

    def constraint():
        bad = check_constraint(red)
        if not check_kappa_product(red):
            bad.append("kappa product")
        return list_outcome(bad, "violations")
    ctx.record("sl-reduce.constraint", "sl-constraint", constraint)
    ctx.record("sl-reduce.hat-fixed", "sl-constraint", lambda: list_outcome(check_hat_fixed(red), "moved entries"))
    ctx.record("sl-reduce.rescaling", "sl-rescaling", lambda: mat_outcome(check_rescaling(red), env))
    ctx.record("sl-reduce.unrescaled", "sl-rescaling",
               lambda: mat_outcome(red.R_sl - build_R(space, q=red.q_hat_fn), env))


# -------------------- esoteric --------------------
def esoteric_suite(ctx: SuiteContext):
    """Always on gl(3); q13 picks which of the two parameter families run."""
    space = ctx.space if ctx.space.n == 3 else ParamSpace(3)
    env = ctx.assignment if ctx.space.n == 3 else {}
    mode = ctx.config.q13

    def run(constrained: bool):
        res = esoteric_gl3(space, constrained)
        status, summary, _ = mat_outcome(res.first, env)
        if not res.zeroth.is_zero():
            return "fail", "zeroth-order YBE residual nonzero", {}
        return status, summary, {}
    if mode in ("both", "constrained"):
        ctx.record("esoteric.constrained", "esoteric", lambda: run(True))
    if mode in ("both", "generic"):
        ctx.record("esoteric.unconstrained", "esoteric", lambda: run(False))
