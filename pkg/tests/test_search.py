from itertools import combinations

import pytest

from triplefam.bounds import binom, exact_g_closed, lower_g, recursion_upper, upper_g
from triplefam.core import Family, Subset, d_triple, is_member_H
from triplefam.lattice import ScoreAtLeast, enumerate_families, free_space
from triplefam.search import (
    CapExceededError,
    brute_force_max,
    exact_g,
    exact_h,
    exact_table,
    first_k_reaching,
    m_sweep,
    monotonicity_violations,
    verify_witness,
)

SMALL = [(n, k) for n in range(3, 8) for k in range(1, n + 1) if binom(n, k) <= 20]


def _naive_g(n, k, ell):
    # plain enumeration of all subfamilies, largest first
    pool = list(combinations(range(1, n + 1), k))
    for r in range(len(pool), 0, -1):
        for sub in combinations(pool, r):
            sets = [set(s) for s in sub]
            if all(len(a & b) + len(b & c) + len(c & a) >= ell for a, b, c in combinations(sets, 3)):
                return r
    return 0


@pytest.mark.parametrize("n,k", SMALL)
def test_methods_agree(n, k):
    for ell in range(2, 7):
        a = exact_g(n, k, ell, "brute")
        b = exact_g(n, k, ell, "shifted-bb")
        assert a.value == b.value
        assert verify_witness(a, ell) and verify_witness(b, ell)


@pytest.mark.parametrize("n,k,ell", [(4, 2, 2), (5, 2, 3), (5, 3, 4), (6, 2, 2), (6, 3, 5)])
def test_engine_matches_naive_enumeration(n, k, ell):
    assert exact_g(n, k, ell, "brute").value == _naive_g(n, k, ell)


def test_known_values():
    assert exact_g(4, 2, 2).value == 6
    assert exact_g(7, 3, 2).value == 35
    assert exact_g(5, 2, 3).value == 4
    assert exact_g(8, 3, 4).value == 11


def test_sandwich_and_closed_forms():
    for n in range(3, 10):
        for k in (2, 3):
            for ell in (2, 3):
                if binom(n, k) > 84:
                    continue
                v = exact_g(n, k, ell).value
                assert lower_g(n, k, ell)[0] <= v
                up = upper_g(n, k, ell)
                if up is not None:
                    assert v <= up[0]
                closed = exact_g_closed(n, k, ell)
                if closed is not None:
                    assert v == closed[0]


def test_recursion_on_exact_values():
    for ell in (2, 3):
        table = {(n, k): exact_g(n, k, ell).value
                 for n in range(2, 11) for k in (2, 3) if k <= n and binom(n, k) <= 120}
        for (n, k), v in table.items():
            if k == 3 and n > 9 - ell and (n - 1, 3) in table and (n - 1, 2) in table:
                assert v <= recursion_upper(n, k, ell, table)


def test_brute_force_max_with_callable_predicate():
    cands = [Subset.of(5, c) for c in combinations(range(1, 6), 2)]
    res = brute_force_max(cands, lambda a, b, c: d_triple(a, b, c) >= 2)
    assert res.value == exact_g(5, 2, 2, "brute").value
    assert is_member_H(res.witness, 2)
    res2 = brute_force_max(cands, ScoreAtLeast(2))
    assert res2.witness == res.witness


def test_caps():
    with pytest.raises(CapExceededError):
        exact_g(12, 4, 2, "brute")
    with pytest.raises(CapExceededError):
        exact_g(13, 6, 2)
    with pytest.raises(CapExceededError):
        exact_h(6, 3, "brute")
    with pytest.raises(CapExceededError):
        exact_h(7, 3)
    with pytest.raises(ValueError):
        exact_g(5, 2, 2, "magic")


def test_exact_h_small_values():
    assert exact_h(4, 10).value == 2
    assert exact_h(4, 7).value == 3
    assert exact_h(3, 0).value == 8
    for n in range(2, 6):
        for ell in range(0, 3 * n + 1):
            a, b = exact_h(n, ell, "brute"), exact_h(n, ell, "shifted-bb")
            assert a.value == b.value
            assert verify_witness(b, ell)


def test_parallel_is_deterministic():
    one = exact_g(8, 3, 4, jobs=1)
    two = exact_g(8, 3, 4, jobs=2)
    assert one.value == two.value and one.witness == two.witness
    assert exact_g(6, 3, 3, "brute", jobs=2).witness == exact_g(6, 3, 3, "brute").witness


def test_repeat_runs_are_identical():
    a, b = exact_g(9, 3, 3), exact_g(9, 3, 3)
    assert a.to_json()["witness"] == b.to_json()["witness"]


def test_enumeration_counts_all_admissible_families():
    n, ell = 4, 3
    masks = [m for m in range(1 << n) if m.bit_count() == 2]
    space = free_space(n, masks, ScoreAtLeast(ell))
    found = {frozenset(space.items[i] for i in fam) for fam in enumerate_families(space)}
    brute = set()
    for r in range(len(masks) + 1):
        for sub in combinations(masks, r):
            if is_member_H(Family(n, frozenset(sub)), ell):
                brute.add(frozenset(sub))
    assert found == brute


def test_sweep_transitions():
    rows = m_sweep(2, 600, range(100, 201))
    assert abs(first_k_reaching(rows, 2) / 600 - 0.2324) <= 0.02
    assert abs(first_k_reaching(rows, 3) / 600 - 0.29) <= 0.02
    assert all(r.best_j == 1 for r in m_sweep(2, 50, range(5, 11)))
    assert not monotonicity_violations(m_sweep(3, 300, range(30, 100)))


def test_table_rows_cross_check():
    rows = exact_table([(n, 2, 2) for n in range(2, 8)] + [(n, 3, 3) for n in range(3, 8)])
    for r in rows:
        assert r.brute == r.exact
