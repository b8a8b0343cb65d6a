"""Ground sets, subsets, families and the triple score.

Subsets of ``[n]`` are stored as integer bitmasks: bit ``i - 1`` is set iff
element ``i`` belongs to the set.  Everything here is immutable.

The triple score of three sets is ``d(A, B, C) = |A&B| + |B&C| + |C&A|``; its
dual is ``2*f1 + 3*f2 + 3*f3`` where ``fm`` counts the ground elements lying in
exactly ``m`` of the three sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

CAPACITY = 64


class GroundMismatchError(ValueError):
    """Sets over different ground sets were combined."""


class DistinctnessError(ValueError):
    """A triple operation received repeated sets."""


# --------------------------------------------------------------------------
# bitmask helpers (shared by the other modules)
# --------------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical member order: by size, then lexicographically."""
    return (mask.bit_count(), elements_of(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def triple_score(a: int, b: int, c: int) -> int:
    return (a & b).bit_count() + (b & c).bit_count() + (c & a).bit_count()


def dual_score(a: int, b: int, c: int) -> int:
    # d + dual = 2 * (|A| + |B| + |C|)
    s = a.bit_count() + b.bit_count() + c.bit_count()
    return 2 * s - triple_score(a, b, c)


# --------------------------------------------------------------------------
# value types
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= CAPACITY:
            raise ValueError(f"ground set size must be in [1, {CAPACITY}], got {self.n!r}")

    def subset(self, elements: Iterable[int]) -> "Subset":
        return Subset.of(self.n, elements)

    def k_subsets(self, k: int) -> list["Subset"]:
        return [Subset(self.n, mask_of(c)) for c in combinations(range(1, self.n + 1), k)]

    def all_subsets(self) -> list["Subset"]:
        subs = [Subset(self.n, m) for m in range(1 << self.n)]
        subs.sort()
        return subs


@dataclass(frozen=True)
class Subset:
    """A subset of ``[n]`` with value semantics."""

    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.n <= CAPACITY:
            raise ValueError(f"ground set size must be in [1, {CAPACITY}], got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has elements outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        elems = list(elements)
        if len(set(elems)) != len(elems):
            raise ValueError(f"repeated elements in {elems}")
        for e in elems:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
        return cls(n, mask_of(elems))

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n)

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def complement(self) -> "Subset":
        return Subset(self.n, full_mask(self.n) & ~self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and e >= 1 and bool(self.mask >> (e - 1) & 1)

    def __lt__(self, other: "Subset") -> bool:
        return mask_key(self.mask) < mask_key(other.mask)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class TripleProfile:
    f0: int
    f1: int
    f2: int
    f3: int
    s: int

    @property
    def n(self) -> int:
        return self.f0 + self.f1 + self.f2 + self.f3

    @property
    def d(self) -> int:
        return 3 * self.f3 + self.f2

    @property
    def dual(self) -> int:
        return 2 * self.f1 + 3 * self.f2 + 3 * self.f3


@dataclass(frozen=True)
class Family:
    """A finite family of distinct subsets of ``[n]``.

    ``masks`` holds the members as bitmasks; iteration yields :class:`Subset`
    objects in canonical (size, lexicographic) order.
    """

    n: int
    masks: frozenset[int]
    uniform_size: int | None = None
    _order: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        GroundSet(self.n)
        top = full_mask(self.n)
        for m in self.masks:
            if m < 0 or m & ~top:
                raise ValueError(f"member {elements_of(m)} not inside [1, {self.n}]")
            if self.uniform_size is not None and m.bit_count() != self.uniform_size:
                raise ValueError(f"member {elements_of(m)} does not have size {self.uniform_size}")
        object.__setattr__(self, "_order", tuple(sorted(self.masks, key=mask_key)))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], uniform_size: int | None = None) -> "Family":
        masks = set()
        for s in sets:
            m = Subset.of(n, s).mask
            if m in masks:
                raise ValueError(f"duplicate member {elements_of(m)}")
            masks.add(m)
        return cls(n, frozenset(masks), uniform_size)

    @classmethod
    def from_subsets(cls, subsets: Iterable[Subset], n: int | None = None,
                     uniform_size: int | None = None) -> "Family":
        subsets = list(subsets)
        if n is None:
            if not subsets:
                raise ValueError("ground set size needed for an empty family")
            n = subsets[0].n
        masks = set()
        for s in subsets:
            if s.n != n:
                raise GroundMismatchError(f"member over [{s.n}] in a family over [{n}]")
            if s.mask in masks:
                raise ValueError(f"duplicate member {s!r}")
            masks.add(s.mask)
        return cls(n, frozenset(masks), uniform_size)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n)

    @property
    def ordered_masks(self) -> tuple[int, ...]:
        return self._order

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.n, m) for m in self._order)

    def sizes(self) -> set[int]:
        return {m.bit_count() for m in self.masks}

    def is_uniform(self) -> bool:
        return len(self.sizes()) <= 1

    def to_lists(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self._order]

    def with_masks(self, masks: Iterable[int]) -> "Family":
        return Family(self.n, frozenset(masks), self.uniform_size)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Subset):
            return item.n == self.n and item.mask in self.masks
        return False

    def __repr__(self) -> str:
        body = ", ".join(repr(s) for s in self.members)
        return f"Family(n={self.n}, {{{body}}})"


# --------------------------------------------------------------------------
# operations on sets and triples
# --------------------------------------------------------------------------

def _same_ground(*sets: Subset) -> int:
    n = sets[0].n
    for s in sets[1:]:
        if s.n != n:
            raise GroundMismatchError(f"ground sets [{n}] and [{s.n}] differ")
    return n


def _distinct_triple(a: Subset, b: Subset, c: Subset) -> None:
    _same_ground(a, b, c)
    if a.mask == b.mask or b.mask == c.mask or a.mask == c.mask:
        raise DistinctnessError(f"triple {a!r}, {b!r}, {c!r} is not pairwise distinct")


def intersection_size(a: Subset, b: Subset) -> int:
    _same_ground(a, b)
    return (a.mask & b.mask).bit_count()


def d_triple(a: Subset, b: Subset, c: Subset) -> int:
    """Sum of the three pairwise intersection sizes of a distinct triple."""
    _distinct_triple(a, b, c)
    return triple_score(a.mask, b.mask, c.mask)


def triple_profile(a: Subset, b: Subset, c: Subset) -> TripleProfile:
    _distinct_triple(a, b, c)
    x, y, z = a.mask, b.mask, c.mask
    f3 = (x & y & z).bit_count()
    f2 = ((x & y) | (y & z) | (x & z)).bit_count() - f3
    union = (x | y | z).bit_count()
    f1 = union - f2 - f3
    return TripleProfile(a.n - union, f1, f2, f3, len(a) + len(b) + len(c))


def dual_d(a: Subset, b: Subset, c: Subset) -> int:
    return triple_profile(a, b, c).dual


def complement_family(family: Family) -> Family:
    top = full_mask(family.n)
    k = family.uniform_size
    return Family(family.n, frozenset(top & ~m for m in family.masks),
                  None if k is None else family.n - k)


def d_lower_bound_from_size(s: int, n: int) -> int:
    """Smallest triple score possible for three subsets of ``[n]`` of total size ``s``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= s <= 3 * n:
        raise ValueError(f"size sum {s} outside [0, {3 * n}]")
    if s <= 2 * n:
        return max(0, s - n)
    return n + 2 * (s - 2 * n)


# --------------------------------------------------------------------------
# membership in H_ell and its dual class
# --------------------------------------------------------------------------

# below this many members plain Python beats the numpy set-up cost
_SMALL = 24


def incidence_matrix(masks: Sequence[int], n: int) -> np.ndarray:
    arr = np.array([[(m >> i) & 1 for i in range(n)] for m in masks], dtype=np.int64)
    return arr.reshape(len(masks), n)


def _triple_blocks(masks: Sequence[int], n: int):
    """Yield ``(a, d_block, s_block)`` for each first index ``a``.

    ``d_block[u, v]`` is the triple score of members ``a < a+1+u < a+1+v`` and
    ``s_block`` the matching size sums; entries with ``u >= v`` are masked out
    by the accompanying boolean mask.
    """
    m = len(masks)
    x = incidence_matrix(masks, n)
    inter = x @ x.T
    sizes = np.diag(inter).copy()
    upper = np.triu(np.ones((m, m), dtype=bool), k=1)
    for a in range(m - 2):
        r = m - a - 1
        row = inter[a, a + 1:]
        d = row[:, None] + row[None, :] + inter[a + 1:, a + 1:]
        sz = sizes[a + 1:]
        s = sizes[a] + sz[:, None] + sz[None, :]
        yield a, d, s, upper[-r:, -r:]


def min_triple_score(family: Family) -> int | None:
    """Minimum of d over distinct triples, or None when there are fewer than three members."""
    masks = family.ordered_masks
    if len(masks) < 3:
        return None
    if len(masks) <= _SMALL:
        return min(triple_score(*t) for t in combinations(masks, 3))
    best = None
    for _, d, _, upper in _triple_blocks(masks, family.n):
        v = int(d[upper].min())
        best = v if best is None else min(best, v)
    return best


def find_violation(family: Family, ell: int) -> tuple[Subset, Subset, Subset] | None:
    """First triple (in canonical order) with d < ell, if any."""
    masks = family.ordered_masks
    if len(masks) < 3:
        return None
    if len(masks) <= _SMALL:
        for t in combinations(masks, 3):
            if triple_score(*t) < ell:
                return tuple(Subset(family.n, m) for m in t)
        return None
    for a, d, _, upper in _triple_blocks(masks, family.n):
        bad = np.argwhere((d < ell) & upper)
        if len(bad):
            u, v = bad[0]
            t = (masks[a], masks[a + 1 + u], masks[a + 1 + v])
            return tuple(Subset(family.n, m) for m in t)
    return None


def find_dual_violation(family: Family, x: int) -> tuple[Subset, Subset, Subset] | None:
    """First triple (in canonical order) with dual score > x, if any."""
    masks = family.ordered_masks
    if len(masks) < 3:
        return None
    if len(masks) <= _SMALL:
        for t in combinations(masks, 3):
            if dual_score(*t) > x:
                return tuple(Subset(family.n, m) for m in t)
        return None
    for a, d, s, upper in _triple_blocks(masks, family.n):
        bad = np.argwhere((2 * s - d > x) & upper)
        if len(bad):
            u, v = bad[0]
            t = (masks[a], masks[a + 1 + u], masks[a + 1 + v])
            return tuple(Subset(family.n, m) for m in t)
    return None


def is_member_H(family: Family, ell: int) -> bool:
    """True iff every triple of distinct members has d >= ell."""
    return find_violation(family, ell) is None


def is_member_Hbar(family: Family, x: int) -> bool:
    """True iff every triple of distinct members has dual score <= x."""
    return find_dual_violation(family, x) is None


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

def format_family(family: Family) -> str:
    lines = [f"n {family.n}"]
    for m in family.ordered_masks:
        lines.append(" ".join(map(str, elements_of(m))) if m else "-")
    return "\n".join(lines) + "\n"


def parse_family(text: str, uniform_size: int | None = None) -> Family:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty family text")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ValueError(f"first line must be 'n <integer>', got {lines[0]!r}")
    n = int(head[1])
    sets = []
    for ln in lines[1:]:
        if ln == "-":
            sets.append(())
            continue
        elems = [int(tok) for tok in ln.split()]
        if elems != sorted(elems):
            raise ValueError(f"member line not ascending: {ln!r}")
        sets.append(elems)
    return Family.from_sets(n, sets, uniform_size)
