import pytest

from triplefam.bounds import binom
from triplefam.constructions import (
    ConstructionSpec,
    counterexample_l4,
    nonuniform_dual_expected_size,
    nonuniform_dual_family,
    nonuniform_primal_family,
    star,
    uniform_j_expected_size,
    uniform_j_family,
    uniform_j_min_score,
)
from triplefam.core import is_member_H, is_member_Hbar, min_triple_score
from triplefam.shifting import is_shifted


def test_star_is_j1_family():
    for n, k in [(6, 2), (8, 3), (9, 4)]:
        fam = uniform_j_family(n, k, 2, 1)
        assert fam == star(n, k)
        assert len(fam) == binom(n - 1, k - 1)
        assert is_member_H(fam, 2)


def test_uniform_j_validation():
    with pytest.raises(ValueError):
        uniform_j_family(10, 3, 4, 1)
    with pytest.raises(ValueError):
        uniform_j_family(10, 2, 2, 3)
    with pytest.raises(ValueError):
        uniform_j_family(3, 3, 2, 2)


@pytest.mark.parametrize("n,k,ell,j", [(10, 3, 2, 2), (9, 4, 3, 2), (12, 4, 5, 3), (11, 5, 6, 3)])
def test_uniform_j_family(n, k, ell, j):
    fam = uniform_j_family(n, k, ell, j)
    assert len(fam) == uniform_j_expected_size(n, k, ell, j)
    assert is_member_H(fam, ell)
    assert is_shifted(fam)
    assert uniform_j_min_score(n, k, ell, j) == min_triple_score(fam)


def test_dual_family_examples():
    assert len(nonuniform_dual_family(12, 6)) == 13
    fam = nonuniform_dual_family(12, 8)
    assert len(fam) == 14 and [1, 2] in fam.to_lists()
    fam = nonuniform_dual_family(12, 11)
    assert len(fam) == 34 == nonuniform_dual_expected_size(12, 11)
    assert is_member_Hbar(fam, 11) and not is_member_Hbar(fam, 10)


@pytest.mark.parametrize("x", range(6, 18))
def test_dual_family_sizes_and_membership(x):
    for n in range(x // 6 + 2, 11):
        fam = nonuniform_dual_family(n, x)
        assert len(fam) == nonuniform_dual_expected_size(n, x)
        assert is_member_Hbar(fam, x)


def test_primal_family():
    fam = nonuniform_primal_family(12, 6)
    assert len(fam) == 13
    assert min(len(s) for s in fam) == 11
    assert is_member_H(fam, 3 * 12 - 6)


def test_dual_family_domain():
    with pytest.raises(ValueError):
        nonuniform_dual_family(10, 5)
    with pytest.raises(ValueError):
        nonuniform_dual_family(3, 12)


def test_counterexample_family():
    fam = counterexample_l4()
    assert is_member_H(fam, 4)
    assert min_triple_score(fam) == 4


def test_construction_dispatch():
    assert ConstructionSpec("star", n=5, k=2).build() == star(5, 2)
    with pytest.raises(ValueError):
        ConstructionSpec("nope").build()
