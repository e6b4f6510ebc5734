"""Machine checks on a completed contraction plan.

Each check returns a VerificationReport holding one named Check.  Inequalities
that only follow from vanishing log Kodaira dimension are reported with FLAG
status when they fail, never FAIL, because the combinatorial model cannot see
the Kodaira dimension.
"""

from __future__ import annotations

from typing import Callable, Optional

from .contraction import (
    ContractionState,
    incidence_discrepancies,
    live_minus_one,
    singular_points,
)
from .goodmodel import GoodModelPlan, run
from .lattice import (
    DivisorClass,
    adjunction_genus,
    canonical_class,
    decompose_effective,
    fiber_class,
    intersect,
)
from .report import FAIL, FLAG, PASS, VACUOUS, VerificationReport
from .surface import SurfacePair


class PlanMismatch(ValueError):
    pass


def _single(name: str, status: str, message: str = "", **witness) -> VerificationReport:
    report = VerificationReport()
    report.add(name, status, message, **witness)
    return report


def _check_plan(sp: SurfacePair, plan: GoodModelPlan):
    if plan.base != sp:
        raise PlanMismatch("plan was computed for a different instance")


def dv_e_prime_support(sp: SurfacePair, plan: GoodModelPlan) -> set[str]:
    """S0 component ids in supp(D^v + E')."""
    supp = {c.id for fc in sp.fibers.values() for c in fc.components if c.in_dv}
    return supp | set(plan.stage_one_components())


def fully_covered_labels(sp: SurfacePair, plan: GoodModelPlan) -> list[str]:
    """Base points whose whole fiber lies in supp(D^v + E')."""
    supp = dv_e_prime_support(sp, plan)
    out = [
        t
        for t in sp.degenerate_labels
        if all(c.id in supp for c in sp.fibers[t].components)
    ]
    return sorted(out + list(sp.dv_whole_smooth_fibers))


def check_canonical_identity(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    """K_S + D = (gamma + 2g - 2) F + D^v + E', with E' effective on the stage-1 locus."""
    _check_plan(sp, plan)
    ctx = sp.ctx
    F = fiber_class(ctx)
    lhs = canonical_class(ctx) + sp.dh_class + sp.dv_class
    rhs = (plan.gamma + 2 * ctx.genus - 2) * F + sp.dv_class + plan.e_prime
    witness = {"lhs": lhs.to_list(), "rhs": rhs.to_list(), "e_prime": plan.e_prime.to_list()}
    if lhs != rhs:
        return _single("prop_3_5", FAIL, "K+D differs from the predicted class", **witness)
    if plan.e_prime.is_zero() != (plan.k1 == 0):
        return _single("prop_3_5", FAIL, "E' vanishes exactly when k1 = 0 fails", **witness)
    ids = plan.stage_one_components()
    basis = [sp.component(cid)[1].cls for cid in ids]
    slack = sum(c.mult for t in {sp.component(cid)[0] for cid in ids} for c in sp.fibers[t].components)
    coeffs = decompose_effective(plan.e_prime, basis, ctx, slack=slack)
    witness["support"] = dict(zip(ids, coeffs or []))
    if coeffs is None or any(n <= 0 for n in coeffs):
        return _single("prop_3_5", FAIL, "E' is not supported on exactly the stage-1 curves", **witness)
    return _single("prop_3_5", PASS, **witness)


def check_horizontal_isolation(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    """Over fibers not inside supp(D^v + E'), D^h and D^v are disjoint at step k2."""
    _check_plan(sp, plan)
    covered = set(fully_covered_labels(sp, plan))
    state = plan.states[plan.k2]
    hids = state.horizontal_ids()
    tested, bad = [], []
    for t in sp.degenerate_labels:
        if t in covered:
            continue
        tested.append(t)
        lf = state.fibers[t]
        dv = {c.id for c in lf.components if c.in_dv}
        for p in lf.points:
            if p.curves() & hids and p.curves() & dv:
                bad.append({"fiber": t, "point": p.id})
    witness = {"tested": tested, "excluded": sorted(covered)}
    if bad:
        return _single("prop_3_6", FAIL, "D^h meets D^v at step k2", witnesses=bad, **witness)
    return _single("prop_3_6", PASS if tested else VACUOUS, **witness)


def check_minus_one_dichotomy(plan: GoodModelPlan) -> VerificationReport:
    """Reducible fibers before the end carry two (-1)-curves or one of multiplicity > 1."""
    tested, bad = 0, []
    for i in range(plan.m):
        state = plan.states[i]
        for t in state.reducible_labels():
            tested += 1
            minus = live_minus_one(state, t)
            if len(minus) >= 2 or (len(minus) == 1 and minus[0].mult > 1):
                continue
            bad.append({"step": i, "fiber": t, "minus_one": [(c.id, c.mult) for c in minus]})
    if bad:
        return _single("lemma_3_7", FAIL, "fiber violates the (-1)-curve dichotomy", witnesses=bad)
    return _single("lemma_3_7", PASS if tested else VACUOUS, fibers_checked=tested)


def check_horizontal_degree_one(plan: GoodModelPlan) -> VerificationReport:
    """From step k1 on, D^h meets every vertical (-1)-curve with intersection number 1."""
    ctx = plan.base.ctx
    tested, bad = 0, []
    for j in range(plan.k1, plan.m + 1):
        state = plan.states[j]
        dh = state.dh_class()
        for t in state.reducible_labels():
            for c in live_minus_one(state, t):
                tested += 1
                v = intersect(dh, c.cls, ctx)
                if v != 1:
                    bad.append({"step": j, "fiber": t, "curve": c.id, "product": v})
    if bad:
        return _single("cor_3_8", FAIL, "D^h.E != 1", witnesses=bad)
    return _single("cor_3_8", PASS if tested else VACUOUS, curves_checked=tested)


def check_genus_formula(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    """p_a of the final D^h equals gamma + 2g - 1 (irreducible D^h only)."""
    _check_plan(sp, plan)
    if len(sp.horizontals) != 1:
        raise ValueError("D^h is reducible; use check_cross_term")
    ctx = sp.ctx
    x = plan.final_state.horizontals[0].cls
    pa = adjunction_genus(x, ctx)
    expected = plan.gamma + 2 * ctx.genus - 1
    witness = {"p_a": pa, "expected": expected, "p_a_at_most_one": pa <= 1}
    if pa != expected:
        return _single("genus_formula", FAIL, "adjunction genus mismatch", **witness)
    return _single("genus_formula", PASS, **witness)


def check_cross_term(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    """The two final sections meet in gamma = e + delta (reducible D^h only)."""
    _check_plan(sp, plan)
    if len(sp.horizontals) != 2:
        raise ValueError("D^h is irreducible; use check_genus_formula")
    h1, h2 = plan.final_state.horizontals
    v = intersect(h1.cls, h2.cls, sp.ctx)
    witness = {"product": v, "gamma": plan.gamma}
    if v != plan.gamma:
        return _single("cross_term", FAIL, "D^{h,1}.D^{h,2} != gamma", **witness)
    return _single("cross_term", PASS, **witness)


def count_degenerate_dv_fibers(sp: SurfacePair, plan: GoodModelPlan) -> tuple[int, int]:
    """(# fibers inside supp(D^v + E'), -(gamma + 2g - 2))."""
    _check_plan(sp, plan)
    return len(fully_covered_labels(sp, plan)), -(plan.gamma + 2 * sp.ctx.genus - 2)


def check_kappa0_consistency(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    count, bound = count_degenerate_dv_fibers(sp, plan)
    witness = {"count": count, "bound": bound, "fibers": fully_covered_labels(sp, plan)}
    if count <= bound:
        return _single("kappa0_consistency", PASS, **witness)
    return _single("kappa0_consistency", FLAG, "more D^v fibers than a kappa=0 pair allows", **witness)


def _classify_dh_points(sp: SurfacePair, plan: GoodModelPlan, h1: str):
    """Sort the points where D^{h,1} meets the rest of D at step k2 into the three cases."""
    state = plan.states[plan.k2]
    covered = set(fully_covered_labels(sp, plan))
    others = state.horizontal_ids() - {h1}
    rows, bad = [], []
    for t, p in state.all_points():
        curves = p.curves()
        if h1 not in curves:
            continue
        lf = state.fibers[t]
        dv = {c.id for c in lf.components if c.in_dv} & curves
        singular = p.is_singular_on(h1)
        if not (singular or dv or curves & others):
            continue
        cases = []
        if singular:
            cases.append(1)
        if dv:
            cases.append(2)
        if curves & others:
            cases.append(3)
        row = {"fiber": t, "point": p.id, "cases": cases}
        rows.append(row)
        if len(cases) != 1:
            bad.append(row)
        elif cases == [2] and t not in covered:
            bad.append(dict(row, reason="D^h meets D^v over a fiber not inside supp(D^v+E')"))
    return rows, bad


def compute_I_data(sp: SurfacePair, plan: GoodModelPlan) -> dict:
    """Ingredients of the bound on intersection points of the first horizontal component.

    ``I1`` counts branches of D^{h,1} (points of its normalization) lying over
    singular points of its final image; ``singular_points`` counts the image
    points themselves.
    """
    _check_plan(sp, plan)
    ctx = sp.ctx
    h1 = min(h.id for h in sp.horizontals)
    base_h1 = next(h for h in sp.horizontals if h.id == h1)
    final = plan.final_state
    sing = singular_points(final, h1)
    I1 = sum(len(p.curve_branches(h1)) for p in sing)

    d = intersect(base_h1.cls, fiber_class(ctx), ctx)
    covered = fully_covered_labels(sp, plan)
    I2 = 0
    for t in covered:
        if t in sp.dv_whole_smooth_fibers:
            I2 += d
        else:
            I2 += sum(1 for p in sp.fibers[t].points if h1 in p.curves())

    reducible = len(sp.horizontals) == 2
    cross = plan.gamma if reducible else 0
    count, fiber_bound = count_degenerate_dv_fibers(sp, plan)
    lemma_bound = -d * (plan.gamma + 2 * ctx.genus - 2)
    rows, bad = _classify_dh_points(sp, plan, h1)
    i2_ok = True
    if count <= fiber_bound:
        i2_ok = I2 <= max(0, lemma_bound)
    pa = adjunction_genus(final.horizontals[0].cls, ctx) if not reducible else None
    return {
        "curve": h1,
        "I1": I1,
        "singular_points": len(sing),
        "I2": I2,
        "d": d,
        "cross": cross,
        "bound": I1 + I2 + cross,
        "lemma_bound": lemma_bound,
        "I2_within_lemma_bound": i2_ok,
        "I1_within_genus_bound": None if pa is None else I1 <= 2 * pa,
        "classification": rows,
        "classification_failures": bad,
    }


def check_i_data(sp: SurfacePair, plan: GoodModelPlan) -> VerificationReport:
    data = compute_I_data(sp, plan)
    witness = {k: v for k, v in data.items() if k != "classification"}
    if data["classification_failures"] or not data["I2_within_lemma_bound"]:
        return _single("i_data", FAIL, "intersection point bookkeeping failed", **witness)
    return _single("i_data", PASS, **witness)


def log_restriction_degrees(
    sp: SurfacePair, curve_class: DivisorClass, g_curve: int, boundary_meets: int
) -> tuple[int, int]:
    """(deg of the conormal bundle, deg of the log cotangent bundle) of a smooth curve."""
    ctx = sp.ctx
    return -intersect(curve_class, curve_class, ctx), 2 * g_curve - 2 + boundary_meets


def state_incidence_failures(state: ContractionState, expected_k_square: int) -> list[dict]:
    ctx = state.ctx
    F = fiber_class(ctx)
    out = []
    for a, b, lat, got in incidence_discrepancies(state):
        out.append({"step": state.step_count, "curves": [a, b], "lattice": lat, "points": got})
    for t in state.degenerate_labels:
        total = DivisorClass.zero(ctx)
        for c in state.fibers[t].components:
            total = total + c.mult * c.cls
        if total != F:
            out.append({"step": state.step_count, "fiber": t, "sum": total.to_list()})
    k2 = intersect(state.canonical, state.canonical, ctx)
    if k2 != expected_k_square:
        out.append({"step": state.step_count, "K^2": k2, "expected": expected_k_square})
    return out


def check_incidence(plan: GoodModelPlan) -> VerificationReport:
    """Point data and projected lattice agree at every state of the run."""
    ctx = plan.base.ctx
    bad = []
    for state in plan.states:
        expected = 8 * (1 - ctx.genus) - ctx.num_exceptionals + state.step_count
        bad.extend(state_incidence_failures(state, expected))
    if bad:
        return _single("incidence", FAIL, "point data disagrees with lattice", witnesses=bad)
    return _single("incidence", PASS, states=len(plan.states))


def _genus_or_vacuous(sp, plan):
    if len(sp.horizontals) != 1:
        return _single("genus_formula", VACUOUS, "D^h is reducible")
    return check_genus_formula(sp, plan)


def _cross_or_vacuous(sp, plan):
    if len(sp.horizontals) != 2:
        return _single("cross_term", VACUOUS, "D^h is irreducible")
    return check_cross_term(sp, plan)


CHECKS: dict[str, Callable[[SurfacePair, GoodModelPlan], VerificationReport]] = {
    "prop_3_5": check_canonical_identity,
    "prop_3_6": check_horizontal_isolation,
    "lemma_3_7": lambda sp, plan: check_minus_one_dichotomy(plan),
    "cor_3_8": lambda sp, plan: check_horizontal_degree_one(plan),
    "genus_formula": _genus_or_vacuous,
    "cross_term": _cross_or_vacuous,
    "kappa0_consistency": check_kappa0_consistency,
    "i_data": check_i_data,
    "incidence": lambda sp, plan: check_incidence(plan),
}


def verify(
    sp: SurfacePair, plan: Optional[GoodModelPlan] = None, checks: Optional[list[str]] = None
) -> VerificationReport:
    if plan is None:
        plan = run(sp)
    names = list(CHECKS) if checks is None else checks
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    report = VerificationReport()
    for n in names:
        report.extend(CHECKS[n](sp, plan))
    return report
