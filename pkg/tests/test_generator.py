import pytest
from hypothesis import given
from hypothesis import strategies as st

from ruledmmp.contraction import initial_state, live_minus_one
from ruledmmp.generator import (
    Builder,
    GeneratorParams,
    ParameterError,
    bisection_base,
    bisection_offsets,
    blowup_trees,
    dv_choices,
    random_instance,
    sections_base,
)
from ruledmmp.io import dumps_instance
from ruledmmp.lattice import DivisorClass, adjunction_genus, fiber_class, intersect
from ruledmmp.surface import minus_one_curves, validate

params = st.builds(
    GeneratorParams,
    st.integers(0, 3),
    st.integers(0, 4),
    st.integers(0, 12),
    st.sampled_from([0.0, 0.25, 0.5, 1.0]),
    st.integers(0, 4),
)
seeds = st.integers(0, 2**32)


def test_seed_zero_is_fix_a_shaped():
    sp = random_instance(0, GeneratorParams(0, 0, 0))
    assert sp.ctx.num_exceptionals == 0
    assert not sp.fibers and not sp.dv_whole_smooth_fibers
    assert len(sp.horizontals) == 1
    assert intersect(sp.dh_class, fiber_class(sp.ctx), sp.ctx) == 2


def test_seed_one_single_blowup():
    sp = random_instance(1, GeneratorParams(0, 0, 1))
    assert len(sp.degenerate_labels) == 1
    t = sp.degenerate_labels[0]
    assert len(sp.fibers[t].components) == 2
    assert len(minus_one_curves(sp, t)) == 2


@pytest.mark.parametrize(
    "bad",
    [
        GeneratorParams(g=4),
        GeneratorParams(e=-1),
        GeneratorParams(e=5),
        GeneratorParams(max_blowups=13),
        GeneratorParams(dv_density=1.5),
        GeneratorParams(whole_fiber_dv_count=5),
    ],
)
def test_out_of_range_params(bad):
    with pytest.raises(ParameterError):
        random_instance(0, bad)


def test_bisection_offsets_keep_genus_nonnegative():
    for g in range(4):
        for e in range(5):
            for s in bisection_offsets(g, e):
                sp = bisection_base(g, e, 2 * e + s).freeze()
                assert adjunction_genus(sp.horizontals[0].cls, sp.ctx) >= 0


def test_sections_base_crossings():
    sp = sections_base(0, 1, 1).freeze()
    a, b = (h.cls for h in sp.horizontals)
    assert intersect(a, b, sp.ctx) == 1
    assert validate(sp).overall


@given(seeds, params)
def test_generated_instances_are_valid(seed, p):
    sp = random_instance(seed, p)
    report = validate(sp)
    assert report.overall, report.summary()
    assert sp.ctx.num_exceptionals == p.max_blowups


@given(seeds, params)
def test_generator_is_deterministic(seed, p):
    assert dumps_instance(random_instance(seed, p)) == dumps_instance(random_instance(seed, p))


@given(seeds, params)
def test_generated_fibers_sum_to_fiber_class(seed, p):
    sp = random_instance(seed, p)
    for t in sp.degenerate_labels:
        total = DivisorClass.zero(sp.ctx)
        for c in sp.fibers[t].components:
            total = total + c.mult * c.cls
        assert total == fiber_class(sp.ctx)


@given(seeds, params)
def test_generated_fibers_satisfy_dichotomy(seed, p):
    sp = random_instance(seed, p)
    state = initial_state(sp)
    for t in sp.degenerate_labels:
        minus = live_minus_one(state, t)
        assert len(minus) >= 2 or (len(minus) == 1 and minus[0].mult > 1), (t, minus)


def test_blowup_trees_counts():
    base = bisection_base(0, 0, 1)
    nodes = list(blowup_trees(base, 2, max_fibers=2))
    assert nodes[0] is base
    assert all(validate(b.freeze()).overall for b in nodes)
    assert len({b.k for b in nodes}) == 3


def test_builder_copy_is_independent():
    b = bisection_base(0, 0, 1)
    c = b.copy()
    c.blow_up(("fresh", None))
    assert b.k == 0 and not b.fibers
    assert c.k == 1


def test_dv_choices_distinct():
    b = bisection_base(0, 0, 1)
    b.blow_up(("fresh", "H1"))
    menus = dv_choices(b)
    assert len(menus) == len({frozenset(m) for m in menus})
    assert set() in menus


def test_unknown_center():
    with pytest.raises(ValueError):
        Builder(0, 0).blow_up(("nowhere", None))
