import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplefam.core import (
    DistinctnessError,
    Family,
    GroundMismatchError,
    GroundSet,
    Subset,
    complement_family,
    d_lower_bound_from_size,
    d_triple,
    dual_d,
    elements_of,
    find_violation,
    format_family,
    intersection_size,
    is_member_H,
    is_member_Hbar,
    mask_of,
    min_triple_score,
    parse_family,
    triple_profile,
)


def S(n, *elems):
    return Subset.of(n, elems)


def test_mask_round_trip():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == (1, 3)
    assert elements_of(0) == ()


def test_ground_set_validation():
    with pytest.raises(ValueError):
        GroundSet(0)
    with pytest.raises(ValueError):
        GroundSet(65)
    assert len(GroundSet(4).k_subsets(2)) == 6
    assert len(GroundSet(4).all_subsets()) == 16


def test_subset_rejects_out_of_range():
    with pytest.raises(ValueError):
        S(3, 4)
    with pytest.raises(ValueError):
        S(3, 0)


def test_intersection_of_l4_generators():
    assert intersection_size(S(6, 1, 2, 6), S(6, 1, 3, 6)) == 2


def test_d_of_l4_generators():
    assert d_triple(S(6, 1, 2, 6), S(6, 1, 3, 6), S(6, 1, 4, 5)) == 4


def test_d_requires_distinct_and_same_ground():
    a = S(5, 1, 2)
    with pytest.raises(DistinctnessError):
        d_triple(a, a, S(5, 3))
    with pytest.raises(GroundMismatchError):
        d_triple(a, S(6, 1), S(5, 3))


def test_profile_counts():
    p = triple_profile(S(4, 1, 2), S(4, 2, 3), S(4, 2))
    assert (p.f0, p.f1, p.f2, p.f3) == (1, 2, 0, 1)
    assert p.s == 5 and p.d == 3 and p.dual == 7 and p.n == 4


def test_small_sets_are_in_hbar():
    # all subsets of size <= p score at most 6p
    for n, p in [(5, 1), (6, 2)]:
        fam = Family(n, frozenset(m for m in range(1 << n) if m.bit_count() <= p))
        assert is_member_Hbar(fam, 6 * p)
        assert not is_member_Hbar(fam, 6 * p - 1)


def test_small_families_are_vacuous_members():
    fam = Family.from_sets(4, [[1], [2]])
    assert is_member_H(fam, 100)
    assert min_triple_score(fam) is None


def test_violation_reports_a_bad_triple():
    fam = Family.from_sets(5, [[1, 2], [3, 4], [1, 5], [2, 3]])
    bad = find_violation(fam, 2)
    assert bad is not None and d_triple(*bad) < 2
    assert find_violation(fam, 1) is None


def test_numpy_and_python_paths_agree():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(5, 7)
        masks = rng.sample(range(1 << n), rng.randint(20, 30))
        fam = Family(n, frozenset(masks))
        naive = min(d_triple(a, b, c) for a, b, c in combinations(fam.members, 3))
        assert min_triple_score(fam) == naive
        for ell in (naive, naive + 1):
            assert is_member_H(fam, ell) == (ell <= naive)


def test_d_lower_bound_examples():
    assert d_lower_bound_from_size(3, 5) == 0
    assert d_lower_bound_from_size(7, 5) == 2
    assert d_lower_bound_from_size(12, 5) == 9
    with pytest.raises(ValueError):
        d_lower_bound_from_size(16, 5)


def test_d_lower_bound_is_tight():
    # the bound is attained by some triple for every admissible size sum
    n = 4
    subsets = list(range(1 << n))
    best = {}
    for a, b, c in combinations(subsets, 3):
        s = a.bit_count() + b.bit_count() + c.bit_count()
        d = (a & b).bit_count() + (b & c).bit_count() + (c & a).bit_count()
        best[s] = min(best.get(s, d), d)
    for s, d in best.items():
        assert d == d_lower_bound_from_size(s, n)


def test_text_format_round_trip():
    fam = Family.from_sets(5, [[], [1, 2], [3], [2, 4, 5]])
    text = format_family(fam)
    assert text.splitlines()[0] == "n 5"
    assert parse_family(text) == fam


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_family("n 3\n1 4\n")
    with pytest.raises(ValueError):
        parse_family("hello\n")


triples = st.integers(2, 10).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(0, (1 << n) - 1), min_size=3, max_size=3, unique=True),
    )
)


@given(triples)
@settings(max_examples=300)
def test_duality_identities(data):
    n, masks = data
    a, b, c = (Subset(n, m) for m in masks)
    p = triple_profile(a, b, c)
    assert p.f0 + p.f1 + p.f2 + p.f3 == n
    assert p.d + dual_d(a, b, c) == 2 * p.s
    assert d_triple(a, b, c) + dual_d(a.complement(), b.complement(), c.complement()) == 3 * n
    assert d_triple(a, b, c) >= d_lower_bound_from_size(p.s, n)


@given(st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), min_size=3, max_size=12))),
    st.integers(0, 12))
@settings(max_examples=150)
def test_complement_swaps_membership(data, ell):
    n, masks = data
    fam = Family(n, frozenset(masks))
    comp = complement_family(fam)
    assert complement_family(comp) == fam
    assert is_member_H(fam, ell) == is_member_Hbar(comp, 3 * n - ell)


@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=20))))
def test_format_parse_property(data):
    n, masks = data
    fam = Family(n, frozenset(masks))
    assert parse_family(format_family(fam)) == fam
