import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle import pair
from ruledmmp.lattice import (
    DivisorClass,
    LatticeContext,
    LatticeError,
    adjunction_genus,
    canonical_class,
    decompose_effective,
    exceptional_class,
    fiber_class,
    intersect,
    project_contract,
    section_class,
)

D = DivisorClass.from_list


def ctx(g=0, e=0, k=0):
    return LatticeContext(g, e, k)


contexts = st.builds(
    LatticeContext,
    st.integers(0, 3),
    st.integers(-2, 4),
    st.integers(0, 6),
)


def vectors(c: LatticeContext, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=c.rank, max_size=c.rank).map(D)


def minus_one_vectors(c: LatticeContext):
    # E_i and F - E_i - ... style vertical (-1)-vectors, plus E_i
    if c.num_exceptionals == 0:
        return st.nothing()
    i = st.integers(1, c.num_exceptionals)
    return st.one_of(
        i.map(lambda j: exceptional_class(c, j)),
        i.map(lambda j: fiber_class(c) - exceptional_class(c, j)),
    )


# examples


def test_section_square_is_minus_e():
    c = ctx(e=1)
    assert intersect(section_class(c), section_class(c), c) == -1


@pytest.mark.parametrize("g,e,k", [(0, 0, 0), (1, 2, 3), (3, -1, 1)])
def test_fiber_and_section_products(g, e, k):
    c = ctx(g, e, k)
    F, C0 = fiber_class(c), section_class(c)
    assert intersect(F, F, c) == 0
    assert intersect(C0, F, c) == 1
    assert F.to_list() == [0, 1] + [0] * k
    assert intersect(F, canonical_class(c), c) == -2


def test_exceptional_basis_is_orthonormal_negative():
    c = ctx(k=2)
    E1, E2 = exceptional_class(c, 1), exceptional_class(c, 2)
    assert intersect(E1, E2, c) == 0
    assert intersect(E1, E1, c) == -1


@pytest.mark.parametrize(
    "g,e,k,expected",
    [(0, 0, 0, [-2, -2]), (1, 0, 0, [-2, 0]), (0, 0, 1, [-2, -2, 1])],
)
def test_canonical_class(g, e, k, expected):
    assert canonical_class(ctx(g, e, k)).to_list() == expected


def test_dimension_mismatch_rejected():
    with pytest.raises(LatticeError):
        intersect(D([1, 0]), D([1, 0, 0]), ctx(k=1))
    with pytest.raises(LatticeError):
        intersect(D([1, 0]), D([1, 0]), ctx(k=1))


def test_project_contract_examples():
    c = ctx(k=1)
    E1 = exceptional_class(c, 1)
    curve = fiber_class(c) - E1
    assert project_contract(curve, curve, c).is_zero()
    assert project_contract(E1, curve, c) == fiber_class(c)
    assert project_contract(canonical_class(c), curve, c).to_list() == [-2, -3, 2]
    # hand expansion of x + (x.c)c
    x = [-2, -2, 1]
    cc = [0, 1, -1]
    m = pair(x, cc, 0)
    assert project_contract(canonical_class(c), curve, c).to_list() == [a + m * b for a, b in zip(x, cc)]


def test_project_contract_rejects_non_minus_one():
    c = ctx(k=2)
    with pytest.raises(LatticeError):
        project_contract(fiber_class(c), D([0, 1, -1, -1]), c)


def test_adjunction_examples():
    assert adjunction_genus(fiber_class(ctx(2, 1, 3)), ctx(2, 1, 3)) == 0
    assert adjunction_genus(D([2, 1]), ctx()) == 0
    c = ctx(k=2)
    x = D([0, 1, -1, -1])
    assert adjunction_genus(x, c) == 0
    assert intersect(x, x, c) == -2


def test_adjunction_rejects_wrong_shape():
    # K is characteristic, so x.(x+K) is even for every integral class; the
    # odd-product guard cannot fire on well-formed input
    with pytest.raises(LatticeError):
        adjunction_genus(D([1, 0, 0]), ctx())


@given(st.data(), contexts)
def test_adjunction_product_always_even(data, c):
    x = data.draw(vectors(c))
    assert (intersect(x, x, c) + intersect(x, canonical_class(c), c)) % 2 == 0


def test_decompose_examples():
    c = ctx(k=2)
    E2 = exceptional_class(c, 2)
    Fpp = D([0, 1, -1, -1])
    assert decompose_effective(DivisorClass.zero(c), [E2, Fpp], c) == [0, 0]
    assert decompose_effective(E2, [E2, Fpp], c) == [1, 0]
    assert decompose_effective(D([0, 1, -1, 0]), [Fpp, E2], c) == [1, 1]
    assert decompose_effective(D([0, -1, 0, 0]), [Fpp, E2], c) is None


def test_decompose_rejects_duplicate_basis():
    c = ctx(k=1)
    E1 = exceptional_class(c, 1)
    with pytest.raises(LatticeError):
        decompose_effective(E1, [E1, E1], c)


def test_class_arithmetic():
    a, b = D([1, 2, 3]), D([0, -1, 1])
    assert (a + b).to_list() == [1, 1, 4]
    assert (a - b).to_list() == [1, 3, 2]
    assert (-a).to_list() == [-1, -2, -3]
    assert (2 * a) == a + a
    assert a.extended(3).to_list() == [1, 2, 3, 0, 0]
    with pytest.raises(LatticeError):
        a + D([1, 2])


# properties


@given(st.data(), contexts)
def test_intersect_matches_hand_expansion(data, c):
    x, y = data.draw(vectors(c)), data.draw(vectors(c))
    assert intersect(x, y, c) == pair(x.to_list(), y.to_list(), c.e_invariant)
    assert intersect(x, y, c) == intersect(y, x, c)


@given(st.data(), contexts.filter(lambda c: c.num_exceptionals > 0))
def test_projection_product_law(data, c):
    x, y = data.draw(vectors(c)), data.draw(vectors(c))
    cc = data.draw(minus_one_vectors(c))
    px, py = project_contract(x, cc, c), project_contract(y, cc, c)
    assert intersect(px, py, c) == intersect(x, y, c) + intersect(x, cc, c) * intersect(y, cc, c)
    assert intersect(px, cc, c) == 0


@given(st.data(), contexts.filter(lambda c: c.num_exceptionals > 0))
def test_projection_fixes_orthogonal_complement(data, c):
    cc = data.draw(minus_one_vectors(c))
    x = data.draw(vectors(c))
    x = project_contract(x, cc, c)  # lands in c-perp
    assert project_contract(x, cc, c) == x


@given(st.data(), contexts.filter(lambda c: c.num_exceptionals > 0))
def test_fiber_fixed_by_vertical_contraction(data, c):
    cc = data.draw(minus_one_vectors(c))
    assert intersect(cc, fiber_class(c), c) == 0
    assert project_contract(fiber_class(c), cc, c) == fiber_class(c)


@given(contexts.filter(lambda c: c.num_exceptionals > 0), st.data())
def test_exceptional_curves_are_rational_minus_one(c, data):
    i = data.draw(st.integers(1, c.num_exceptionals))
    E = exceptional_class(c, i)
    assert intersect(E, E, c) == -1
    assert adjunction_genus(E, c) == 0
    assert intersect(canonical_class(c), E, c) == -1


@given(
    st.lists(st.integers(0, 5), min_size=2, max_size=2),
    st.sampled_from([0, 1]),
)
def test_decompose_against_exhaustive_search(coeffs, which):
    c = ctx(k=2)
    bases = [
        [D([0, 1, -1, -1]), exceptional_class(c, 2)],
        [D([0, 0, 1, -1]), exceptional_class(c, 2)],
    ]
    basis = bases[which]
    x = DivisorClass.zero(c)
    for n, b in zip(coeffs, basis):
        x = x + n * b
    got = decompose_effective(x, basis, c)
    brute = [
        list(t)
        for t in itertools.product(range(6), repeat=2)
        if sum((n * b for n, b in zip(t, basis)), DivisorClass.zero(c)) == x
    ]
    assert got in brute
    recon = DivisorClass.zero(c)
    for n, b in zip(got, basis):
        recon = recon + n * b
    assert recon == x


@given(st.data(), st.integers(0, 4))
def test_decompose_round_trip(data, k):
    c = ctx(k=k)
    n = data.draw(st.integers(0, c.rank))
    basis = data.draw(st.lists(vectors(c, -2, 2), min_size=n, max_size=n, unique=True))
    x = data.draw(vectors(c, -4, 4))
    got = decompose_effective(x, basis, c)
    if got is not None:
        assert all(v >= 0 for v in got)
        recon = DivisorClass.zero(c)
        for v, b in zip(got, basis):
            recon = recon + v * b
        assert recon == x
