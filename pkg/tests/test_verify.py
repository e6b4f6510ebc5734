from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruledmmp.fixtures import FIXTURES, fix_a, fix_b, fix_c, fix_d
from ruledmmp.generator import GeneratorParams, bisection_base, random_instance, sections_base
from ruledmmp.goodmodel import run
from ruledmmp.lattice import DivisorClass, fiber_class
from ruledmmp.report import FAIL, FLAG, PASS, VACUOUS, Check, VerificationReport
from ruledmmp.verify import (
    CHECKS,
    PlanMismatch,
    check_canonical_identity,
    check_cross_term,
    check_genus_formula,
    check_horizontal_degree_one,
    check_horizontal_isolation,
    check_i_data,
    check_incidence,
    check_kappa0_consistency,
    check_minus_one_dichotomy,
    compute_I_data,
    count_degenerate_dv_fibers,
    fully_covered_labels,
    log_restriction_degrees,
    verify,
)


def only(report: VerificationReport) -> Check:
    (c,) = report.checks
    return c


def planned(sp):
    return sp, run(sp)


def all_dv(sp):
    fibers = {
        t: replace(fc, components=tuple(replace(c, in_dv=True) for c in fc.components))
        for t, fc in sp.fibers.items()
    }
    return replace(sp, fibers=fibers)


def test_canonical_identity_fixtures():
    c = only(check_canonical_identity(*planned(fix_a())))
    assert c.status == PASS and c.witness["lhs"] == [0, -1]
    c = only(check_canonical_identity(*planned(fix_b())))
    assert c.status == PASS and c.witness["lhs"] == c.witness["rhs"] == [0, 0, -1]
    c = only(check_canonical_identity(*planned(fix_c())))
    assert c.status == PASS and c.witness["lhs"] == [0, 0, -1, 0]
    assert c.witness["support"] == {"E2": 1}


def test_canonical_identity_detects_tampering():
    sp, plan = planned(fix_c())
    bad = replace(plan, gamma=plan.gamma + 1)
    assert only(check_canonical_identity(sp, bad)).status == FAIL


def test_plan_mismatch():
    with pytest.raises(PlanMismatch):
        check_canonical_identity(fix_b(), run(fix_c()))


def test_horizontal_isolation():
    assert only(check_horizontal_isolation(*planned(fix_b()))).status == PASS
    assert only(check_horizontal_isolation(*planned(fix_c()))).status == PASS
    sp = all_dv(fix_b())
    c = only(check_horizontal_isolation(*planned(sp)))
    assert c.status == VACUOUS and c.witness["excluded"] == ["t0"]


def test_minus_one_dichotomy():
    c = only(check_minus_one_dichotomy(run(fix_b())))
    assert c.status == PASS and c.witness["fibers_checked"] == 1
    c = only(check_minus_one_dichotomy(run(fix_c())))
    assert c.status == PASS and c.witness["fibers_checked"] == 2
    assert only(check_minus_one_dichotomy(run(fix_a()))).status == VACUOUS


def test_horizontal_degree_one():
    c = only(check_horizontal_degree_one(run(fix_c())))
    assert c.status == PASS and c.witness["curves_checked"] == 2
    c = only(check_horizontal_degree_one(run(fix_b())))
    assert c.status == PASS and c.witness["curves_checked"] == 2
    assert only(check_horizontal_degree_one(run(fix_a()))).status == VACUOUS


def test_genus_formula_examples():
    for sp in (fix_a(), fix_b(), fix_c()):
        c = only(check_genus_formula(*planned(sp)))
        assert c.status == PASS and c.witness["p_a"] == 0
    c = only(check_genus_formula(*planned(bisection_base(0, 0, 2).freeze())))
    assert c.status == PASS and c.witness["p_a"] == 1 and c.witness["expected"] == 1
    with pytest.raises(ValueError):
        check_genus_formula(*planned(fix_d()))


def test_cross_term_examples():
    c = only(check_cross_term(*planned(fix_d())))
    assert c.status == PASS and c.witness == {"product": 0, "gamma": 0}
    c = only(check_cross_term(*planned(sections_base(0, 1, 0).freeze())))
    assert c.status == PASS and c.witness == {"product": 0, "gamma": 0}
    with pytest.raises(ValueError):
        check_cross_term(*planned(fix_a()))


def test_count_degenerate_dv_fibers():
    assert count_degenerate_dv_fibers(*planned(fix_b())) == (0, 1)
    assert count_degenerate_dv_fibers(*planned(fix_c())) == (0, 1)
    sp = replace(fix_a(), dv_whole_smooth_fibers=("w00",))
    assert count_degenerate_dv_fibers(*planned(sp)) == (1, 1)
    assert fully_covered_labels(*planned(all_dv(fix_c()))) == ["t0"]


def test_kappa0_flag_is_not_failure():
    sp = replace(fix_a(), dv_whole_smooth_fibers=("w00", "w01"))
    c = only(check_kappa0_consistency(*planned(sp)))
    assert c.status == FLAG and c.ok
    report = verify(sp)
    assert report.overall
    assert FLAG in [x.status for x in report.checks]


def test_i_data_examples():
    d = compute_I_data(*planned(fix_b()))
    assert (d["I1"], d["I2"], d["d"], d["cross"], d["bound"]) == (0, 0, 2, 0, 0)
    d = compute_I_data(*planned(fix_d()))
    assert (d["I1"], d["I2"], d["d"], d["cross"]) == (0, 0, 1, 0)
    d = compute_I_data(*planned(replace(fix_a(), dv_whole_smooth_fibers=("w00",))))
    assert d["I2"] == 2 and d["lemma_bound"] == 2 and d["I2_within_lemma_bound"]


def test_i_data_classification_fix_b():
    d = compute_I_data(*planned(fix_b()))
    assert d["classification_failures"] == []
    assert only(check_i_data(*planned(fix_b()))).status == PASS


def test_log_restriction_degrees():
    sp = fix_a()
    F = fiber_class(sp.ctx)
    assert log_restriction_degrees(sp, F, 0, 2) == (0, 0)
    C0 = DivisorClass.from_list([1, 0])
    assert log_restriction_degrees(fix_d(), C0, 1, 0)[1] == 0
    assert log_restriction_degrees(sp, sp.dh_class, 0, 2)[1] == 0
    assert log_restriction_degrees(sp, sp.dh_class, 0, 1)[1] == -1


def test_incidence_check_on_fixtures():
    for make in FIXTURES.values():
        c = only(check_incidence(run(make())))
        assert c.status == PASS


def test_verify_selection_and_unknown():
    report = verify(fix_c(), checks=["prop_3_5", "prop_3_6", "lemma_3_7", "cor_3_8"])
    assert [(c.name, c.status) for c in report.checks] == [
        ("prop_3_5", PASS),
        ("prop_3_6", PASS),
        ("lemma_3_7", PASS),
        ("cor_3_8", PASS),
    ]
    assert only(verify(fix_a(), checks=["cross_term"])).status == VACUOUS
    with pytest.raises(KeyError):
        verify(fix_a(), checks=["nope"])


def test_report_summary():
    r = VerificationReport()
    r.add("a", PASS)
    r.fail("b", "broken", x=1)
    assert not r.overall
    assert r.summary().splitlines() == ["a: PASS", "b: FAIL (broken)"]


grid = st.builds(
    GeneratorParams,
    st.integers(0, 2),
    st.integers(0, 3),
    st.integers(0, 8),
    st.sampled_from([0.0, 0.5, 1.0]),
    st.integers(0, 2),
)


@given(st.integers(0, 10**6), grid)
def test_all_checks_on_generated(seed, p):
    sp = random_instance(seed, p)
    report = verify(sp)
    assert report.overall, report.summary()
    assert [c.name for c in report.checks] == list(CHECKS)
