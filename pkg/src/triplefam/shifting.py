"""Shifting (compression) of families and related canonical forms.

``tau(F, (x, y))`` with ``y < x`` replaces ``x`` by ``y`` in every member that
contains ``x`` but not ``y``, unless the image is already a member.  Shifts keep
the family size, never decrease the minimum triple score, and strictly lower
the element-sum weight whenever they change something, so repeated shifting
ends in a *shifted* family: one that is closed downward under the
coordinatewise dominance order inside every size level.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .core import (
    Family,
    Subset,
    elements_of,
    full_mask,
    mask_key,
    triple_score,
)


@dataclass(frozen=True, order=True)
class ShiftPair:
    x: int
    y: int

    def __post_init__(self):
        if not 1 <= self.y < self.x:
            raise ValueError(f"shift pair needs 1 <= y < x, got x={self.x}, y={self.y}")


def shift_pairs(n: int) -> Iterator[ShiftPair]:
    """All valid pairs, ordered by (y, x)."""
    for y in range(1, n + 1):
        for x in range(y + 1, n + 1):
            yield ShiftPair(x, y)


def _tau_masks(masks: frozenset[int], x: int, y: int) -> frozenset[int]:
    bx, by = 1 << (x - 1), 1 << (y - 1)
    out = set()
    for m in masks:
        if m & bx and not m & by:
            image = (m & ~bx) | by
            out.add(m if image in masks else image)
        else:
            out.add(m)
    return frozenset(out)


def tau(family: Family, pair: ShiftPair | tuple[int, int]) -> Family:
    """Shift ``family`` from ``pair.x`` to ``pair.y``."""
    if not isinstance(pair, ShiftPair):
        pair = ShiftPair(*pair)
    if pair.x > family.n:
        raise ValueError(f"shift pair {pair} outside ground set [{family.n}]")
    return family.with_masks(_tau_masks(family.masks, pair.x, pair.y))


def weight(obj: Subset | Family) -> int:
    """Element sum of a set, or the sum of member weights of a family."""
    if isinstance(obj, Subset):
        return sum(obj.elements)
    return sum(sum(elements_of(m)) for m in obj.masks)


def dominates(lower: Subset, upper: Subset) -> bool:
    """``lower <= upper`` coordinatewise on the ascending element lists."""
    if len(lower) != len(upper):
        raise ValueError(f"dominance needs equal sizes, got {len(lower)} and {len(upper)}")
    return all(i <= h for i, h in zip(lower.elements, upper.elements))


def lower_covers(mask: int) -> list[int]:
    """Sets obtained by replacing one element ``h`` with ``h - 1`` (when absent).

    These generate the dominance order within a size level.
    """
    out = []
    m = mask
    while m:
        low = m & -m
        if low != 1 and not mask & (low >> 1):
            out.append((mask & ~low) | (low >> 1))
        m &= m - 1
    return out


def upper_covers(mask: int, n: int) -> list[int]:
    out = []
    m = mask
    top = 1 << (n - 1)
    while m:
        low = m & -m
        if low != top and not mask & (low << 1):
            out.append((mask & ~low) | (low << 1))
        m &= m - 1
    return out


def _is_shifted_masks(masks: frozenset[int]) -> bool:
    return all(c in masks for m in masks for c in lower_covers(m))


def is_shifted(family: Family) -> bool:
    return _is_shifted_masks(family.masks)


def _shift_fully(masks: frozenset[int], n: int) -> frozenset[int]:
    changed = True
    while changed:
        changed = False
        for y in range(1, n + 1):
            for x in range(y + 1, n + 1):
                new = _tau_masks(masks, x, y)
                if new != masks:
                    masks = new
                    changed = True
    return masks


def canonical_shift(family: Family) -> Family:
    """Shift until no pair changes the family (passes in (y, x) order)."""
    return family.with_masks(_shift_fully(family.masks, family.n))


def is_upward_closed(family: Family) -> bool:
    n = family.n
    for m in family.masks:
        for i in range(n):
            b = 1 << i
            if not m & b and m | b not in family.masks:
                return False
    return True


def _largest_unused_superset(mask: int, masks: set[int], n: int) -> int | None:
    """Largest superset of ``mask`` outside ``masks``; ties go to the lexicographically least."""
    free = [i for i in range(n) if not mask >> i & 1]
    for extra in range(len(free), 0, -1):
        for combo in combinations(free, extra):
            g = mask
            for i in combo:
                g |= 1 << i
            if g not in masks:
                return g
    return None


def _upward_fully(masks: frozenset[int], n: int) -> frozenset[int]:
    current = set(masks)
    while True:
        for m in sorted(current, key=mask_key):
            g = _largest_unused_superset(m, current, n)
            if g is not None:
                current.remove(m)
                current.add(g)
                break
        else:
            return frozenset(current)


def upward_shift_closure(family: Family) -> Family:
    """Replace members by unused supersets until the family is upward closed.

    The member moved is the first one (canonical order) that has an unused
    proper superset; it moves to its largest unused superset.
    """
    out = Family(family.n, _upward_fully(family.masks, family.n))
    if len(out) != len(family) or not is_upward_closed(out):
        raise AssertionError("upward closure lost members or did not close")
    return out


def canonical_upclosed_shifted(family: Family) -> Family:
    """Alternate full upward closure and full shifting until both properties hold."""
    masks, n = family.masks, family.n
    while True:
        masks = _upward_fully(masks, n)
        if _is_shifted_masks(masks):
            break
        masks = _shift_fully(masks, n)
        if is_upward_closed(Family(n, masks)):
            break
    return Family(n, masks)


def restricted_violations(family: Family, cutoff: int, ell: int) -> Iterator[tuple[Subset, Subset, Subset]]:
    """Distinct member triples whose traces on ``[cutoff]`` score below ``ell``.

    Traces that coincide as sets are still scored.
    """
    keep = full_mask(min(cutoff, family.n)) if cutoff > 0 else 0
    for a, b, c in combinations(family.ordered_masks, 3):
        if triple_score(a & keep, b & keep, c & keep) < ell:
            yield tuple(Subset(family.n, m) for m in (a, b, c))


def restriction_in_H(family: Family, k: int, ell: int) -> bool:
    """Check that traces on ``[3k - ell]`` of every distinct triple still score ``>= ell``.

    Only meaningful for ``ell`` in {2, 3}; for larger ``ell`` the property fails
    in general (see :func:`triplefam.constructions.counterexample_l4`), so those
    are rejected; use :func:`restricted_violations` directly to probe them.
    """
    if ell not in (2, 3):
        raise ValueError(f"restriction property only holds for ell in {{2, 3}}, got {ell}")
    if family.sizes() - {k}:
        raise ValueError(f"family is not {k}-uniform")
    return next(restricted_violations(family, 3 * k - ell, ell), None) is None
