"""Explicit extremal families and the ell = 4 counterexample."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bounds import construction_size, f_j_ell, h_formula
from .core import Family, complement_family, incidence_matrix, mask_of

KINDS = ("uniform-j", "star", "nonuniform-dual", "nonuniform-primal", "counterexample-l4")


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    n: int | None = None
    k: int | None = None
    ell: int | None = None
    j: int | None = None
    x: int | None = None

    def build(self) -> Family:
        if self.kind == "uniform-j":
            return uniform_j_family(self.n, self.k, self.ell, self.j)
        if self.kind == "star":
            return star(self.n, self.k)
        if self.kind == "nonuniform-dual":
            return nonuniform_dual_family(self.n, self.x)
        if self.kind == "nonuniform-primal":
            return nonuniform_primal_family(self.n, self.x)
        if self.kind == "counterexample-l4":
            return counterexample_l4()
        raise ValueError(f"unknown construction kind {self.kind!r}; choose from {KINDS}")


def _k_sets(n: int, k: int):
    return (mask_of(c) for c in combinations(range(1, n + 1), k))


def uniform_j_family(n: int, k: int, ell: int, j: int) -> Family:
    """All k-subsets of ``[n]`` with at least ``j`` elements in ``[f(j, ell)]``."""
    if not (ell >= 0 and 3 * j >= ell and j <= k):
        raise ValueError(f"need ceil(ell/3) <= j <= k, got ell={ell}, j={j}, k={k}")
    f = f_j_ell(j, ell)
    if f > n:
        raise ValueError(f"prefix length f({j},{ell})={f} exceeds n={n}")
    prefix = (1 << f) - 1
    masks = frozenset(m for m in _k_sets(n, k) if (m & prefix).bit_count() >= j)
    return Family(n, masks, k)


def uniform_j_expected_size(n: int, k: int, ell: int, j: int) -> int:
    return construction_size(n, k, f_j_ell(j, ell), j)


def uniform_j_min_score(n: int, k: int, ell: int, j: int) -> int | None:
    """Exact minimum triple score of :func:`uniform_j_family`.

    The family is invariant under permuting ``[f]`` and ``[n] - [f]``
    separately, so every distinct triple is equivalent to one whose first
    member is the canonical set with ``a`` prefix elements (smallest prefix
    points, then smallest outside points).  Scanning all pairs against each
    such anchor covers every triple.
    """
    fam = uniform_j_family(n, k, ell, j)
    masks = fam.ordered_masks
    if len(masks) < 3:
        return None
    f = f_j_ell(j, ell)
    x = incidence_matrix(masks, n)
    inter = x @ x.T
    m = len(masks)
    upper = np.triu(np.ones((m, m), dtype=bool), k=1)
    index = {mk: i for i, mk in enumerate(masks)}
    best = None
    for a in range(j, min(k, f) + 1):
        if k - a > n - f:
            continue
        anchor = mask_of(list(range(1, a + 1)) + list(range(f + 1, f + 1 + k - a)))
        i = index[anchor]
        row = inter[i]
        d = row[:, None] + row[None, :] + inter
        keep = upper.copy()
        keep[i, :] = False
        keep[:, i] = False
        v = int(d[keep].min())
        best = v if best is None else min(best, v)
    return best


def star(n: int, k: int, center: int = 1) -> Family:
    bit = 1 << (center - 1)
    return Family(n, frozenset(m for m in _k_sets(n, k) if m & bit), k)


def _dual_params(n: int, x: int) -> tuple[int, int]:
    p, q = divmod(x, 6)
    if p < 1:
        raise ValueError(f"x={x} gives p=0; use the closed values for x < 6")
    if n < p + 2:
        raise ValueError(f"need n >= p+2, got n={n}, p={p}")
    return p, q


def nonuniform_dual_family(n: int, x: int) -> Family:
    """Small-sets family whose triples all have dual score ``<= x = 6p + q``.

    All sets of size ``<= p``, plus sets of size ``p + 1`` that contain
    {1, 2} (q = 2), contain 1 (q = 3, 4) or meet {1, 2} (q = 5).
    """
    p, q = _dual_params(n, x)
    masks = set()
    for i in range(p + 1):
        masks.update(_k_sets(n, i))
    if q == 2:
        keep = lambda m: m & 0b11 == 0b11
    elif q in (3, 4):
        keep = lambda m: m & 1
    elif q == 5:
        keep = lambda m: m & 0b11
    else:
        keep = None
    if keep is not None:
        masks.update(m for m in _k_sets(n, p + 1) if keep(m))
    return Family(n, frozenset(masks))


def nonuniform_dual_expected_size(n: int, x: int) -> int:
    p, q = _dual_params(n, x)
    return h_formula(n, p, q)


def nonuniform_primal_family(n: int, x: int) -> Family:
    """Complements of :func:`nonuniform_dual_family`; triples score ``>= 3n - x``."""
    return complement_family(nonuniform_dual_family(n, x))


def counterexample_l4() -> Family:
    """Dominance down-set of {1,2,6}, {1,3,6}, {1,4,5} in ``C([6], 3)``.

    Every triple scores at least 4, yet on ``[5]`` the generators score 3.
    """
    gens = [(1, 2, 6), (1, 3, 6), (1, 4, 5)]
    masks = frozenset(
        mask_of(c) for c in combinations(range(1, 7), 3)
        if any(all(a <= b for a, b in zip(c, g)) for g in gens)
    )
    return Family(6, masks, 3)
