from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplefam.constructions import counterexample_l4
from triplefam.core import Family, Subset, is_member_H, mask_of
from triplefam.shifting import (
    ShiftPair,
    canonical_shift,
    canonical_upclosed_shifted,
    dominates,
    is_shifted,
    is_upward_closed,
    lower_covers,
    restricted_violations,
    restriction_in_H,
    shift_pairs,
    tau,
    upper_covers,
    weight,
)
from triplefam.verify import shifted_families


def test_shift_pair_orientation():
    with pytest.raises(ValueError):
        ShiftPair(1, 2)
    assert [(p.x, p.y) for p in shift_pairs(3)] == [(2, 1), (3, 1), (3, 2)]


def test_tau_blocked_by_existing_image():
    fam = Family.from_sets(4, [[2, 3], [1, 3], [2, 4]])
    out = tau(fam, (2, 1))
    assert sorted(out.to_lists()) == [[1, 3], [1, 4], [2, 3]]


def test_weight_and_dominance():
    assert weight(Subset.of(5, [2, 5])) == 7
    assert dominates(Subset.of(5, [1, 3]), Subset.of(5, [2, 3]))
    assert not dominates(Subset.of(5, [1, 4]), Subset.of(5, [2, 3]))
    with pytest.raises(ValueError):
        dominates(Subset.of(5, [1]), Subset.of(5, [2, 3]))


def test_covers_are_inverse():
    n = 6
    for k in range(n + 1):
        for c in combinations(range(1, n + 1), k):
            m = mask_of(c)
            for low in lower_covers(m):
                assert m in upper_covers(low, n)
            for up in upper_covers(m, n):
                assert m in lower_covers(up)


def test_counterexample_is_shifted_and_breaks_restriction():
    fam = counterexample_l4()
    assert len(fam) == 8 and is_shifted(fam)
    assert is_member_H(fam, 4)
    bad = list(restricted_violations(fam, 5, 4))
    assert bad
    with pytest.raises(ValueError):
        restriction_in_H(fam, 3, 4)


def _brute_shifted_count(n, k):
    pool = [mask_of(c) for c in combinations(range(1, n + 1), k)]
    count = 0
    for r in range(len(pool) + 1):
        for sub in combinations(pool, r):
            if is_shifted(Family(n, frozenset(sub), k)):
                count += 1
    return count


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (6, 2)])
def test_downset_count_matches_brute_enumeration(n, k):
    fams = list(shifted_families(n, k))
    assert len({f.masks for f in fams}) == len(fams)
    assert all(is_shifted(f) for f in fams)
    assert len(fams) == _brute_shifted_count(n, k)


def test_restriction_holds_on_small_shifted_families():
    for n in range(4, 8):
        for k in (2, 3):
            for ell in (2, 3):
                for fam in shifted_families(n, k, ell):
                    assert restriction_in_H(fam, k, ell)


families = st.integers(3, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(st.integers(0, (1 << n) - 1), min_size=3, max_size=10),
    )
)


@given(families, st.integers(0, 6))
@settings(max_examples=200, deadline=None)
def test_every_shift_preserves_size_and_membership(data, ell):
    n, masks = data
    fam = Family(n, frozenset(masks))
    member = is_member_H(fam, ell)
    for pair in shift_pairs(n):
        out = tau(fam, pair)
        assert len(out) == len(fam)
        assert sorted(map(len, out)) == sorted(map(len, fam))
        if member:
            assert is_member_H(out, ell)
        if out != fam:
            assert weight(out) < weight(fam)


@given(families)
@settings(max_examples=100, deadline=None)
def test_canonical_shift_is_fixed_point(data):
    n, masks = data
    fam = canonical_shift(Family(n, frozenset(masks)))
    assert is_shifted(fam)
    assert all(tau(fam, p) == fam for p in shift_pairs(n))


@given(families, st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_upclosed_shifted_form(data, ell):
    n, masks = data
    fam = Family(n, frozenset(masks))
    out = canonical_upclosed_shifted(fam)
    assert len(out) == len(fam)
    assert is_shifted(out) and is_upward_closed(out)
    if is_member_H(fam, ell):
        assert is_member_H(out, ell)
