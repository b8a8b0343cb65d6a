"""Exact values of g(n, k, ell) and h(n, ell) at desk scale.

Two routes are provided and are meant to be checked against each other:

``brute``
    include/exclude search over every subfamily of the candidates, with
    incremental triple checks and a cardinality bound.
``shifted-bb``
    the same engine restricted to shifted families (dominance down-sets), or to
    upward-closed shifted families in the non-uniform case.  Shifting and
    upward moves never destroy the triple condition, so a maximum family of
    that shape always exists.  It is additionally seeded with the best prefix
    construction and stops once a proven upper bound is reached.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .bounds import binom, exact_g_closed, lower_g, recursion_upper, upper_g
from .core import Family, Subset, is_member_H, mask_of
from .lattice import (
    DualAtMost,
    ScoreAtLeast,
    Space,
    free_space,
    maximize,
    shifted_uniform_space,
    upclosed_shifted_space,
)

BRUTE_CAP = 40
SHIFTED_CAP = 400
METHODS = ("brute", "shifted-bb")


class CapExceededError(RuntimeError):
    """The instance is too large for the requested method."""


@dataclass
class SearchResult:
    value: int
    witness: Family
    method: str
    nodes_explored: int
    wall_time: float
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "witness": self.witness.to_lists(),
            "nodes": self.nodes_explored,
            "millis": round(self.wall_time * 1000, 3),
        }


def _as_constraint(predicate, n: int):
    if isinstance(predicate, (ScoreAtLeast, DualAtMost)):
        return predicate

    def wrapped(a: int, b: int, c: int) -> bool:
        return bool(predicate(Subset(n, a), Subset(n, b), Subset(n, c)))

    return wrapped


def _run(space: Space, method: str, floor: int, stop_at: int | None, jobs: int,
         uniform_size: int | None) -> SearchResult:
    t0 = time.perf_counter()
    out = maximize(space, floor=floor, stop_at=stop_at, jobs=jobs)
    elapsed = time.perf_counter() - t0
    witness = Family(space.n, frozenset(space.items[i] for i in out.chosen), uniform_size)
    return SearchResult(out.count, witness, method, out.nodes, elapsed)


def brute_force_max(candidates: Sequence[Subset], predicate, cap: int = BRUTE_CAP,
                    jobs: int = 1) -> SearchResult:
    """Largest subfamily of ``candidates`` whose distinct triples all pass ``predicate``.

    ``predicate`` is a :class:`ScoreAtLeast`/:class:`DualAtMost` constraint or
    any callable on three :class:`Subset` objects.  The witness is the
    lexicographically least maximum family in (size, lex) member order.
    """
    cands = sorted(set(candidates))
    if len(cands) > cap:
        raise CapExceededError(
            f"{len(cands)} candidates exceed the brute-force cap of {cap}; use method 'shifted-bb'")
    if not cands:
        raise ValueError("no candidates")
    n = cands[0].n
    if any(c.n != n for c in cands):
        raise ValueError("candidates over different ground sets")
    sizes = {len(c) for c in cands}
    space = free_space(n, [c.mask for c in cands], _as_constraint(predicate, n))
    return _run(space, "brute", min(2, len(cands)), None, jobs,
                sizes.pop() if len(sizes) == 1 else None)


def g_upper_bound(n: int, k: int, ell: int,
                  table: Mapping[tuple[int, int], int] | None = None) -> int:
    """Best available proven upper bound on g(n, k, ell).

    Exact table values first, then the recursion over table entries, then the
    closed-form upper bounds, then C(n, k).
    """
    bounds = [binom(n, k)]
    if table and (n, k) in table:
        bounds.append(table[(n, k)])
    up = upper_g(n, k, ell)
    if up is not None:
        bounds.append(up[0])
    if table is not None and ell in (2, 3) and k >= 3 and n > 3 * k - ell:
        if (n - 1, k) in table and (n - 1, k - 1) in table:
            bounds.append(recursion_upper(n, k, ell, table))
    return min(bounds)


def exact_g(n: int, k: int, ell: int, method: str = "shifted-bb", cap: int | None = None,
            jobs: int = 1, table: Mapping[tuple[int, int], int] | None = None) -> SearchResult:
    """Exact g(n, k, ell) by exhaustive search.

    ``table`` may hold exact g(n', k', ell) values for smaller instances; they
    tighten the stopping bound of ``shifted-bb``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    total = binom(n, k)
    constraint = ScoreAtLeast(ell)
    if method == "brute":
        cap = BRUTE_CAP if cap is None else cap
        if total > cap:
            raise CapExceededError(
                f"C({n},{k})={total} exceeds the brute-force cap of {cap}; use method 'shifted-bb'")
        masks = [mask_of(c) for c in combinations(range(1, n + 1), k)]
        space = free_space(n, masks, constraint)
        return _run(space, "brute", min(2, total), None, jobs, k)
    cap = SHIFTED_CAP if cap is None else cap
    if total > cap:
        raise CapExceededError(f"C({n},{k})={total} exceeds the shifted search cap of {cap}")
    floor = min(2, total)
    if 3 * k >= ell:
        floor = max(floor, lower_g(n, k, ell)[0])
    stop_at = g_upper_bound(n, k, ell, table)
    space = shifted_uniform_space(n, k, constraint)
    res = _run(space, "shifted-bb", floor, stop_at, jobs, k)
    res.extra = {"floor": floor, "stop_at": stop_at}
    return res


def exact_h(n: int, ell: int, method: str = "shifted-bb", jobs: int = 1) -> SearchResult:
    """Exact h(n, ell): all subsets of ``[n]`` are candidates.

    ``brute`` handles ``n <= 5``; ``shifted-bb`` searches upward-closed shifted
    families and handles ``n <= 6``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    limit = 5 if method == "brute" else 6
    if not 1 <= n <= limit:
        raise CapExceededError(f"n={n} outside the {method} range 1..{limit} for h(n, ell)")
    constraint = ScoreAtLeast(ell)
    floor = min(2, 1 << n)
    if method == "brute":
        space = free_space(n, range(1 << n), constraint)
        return _run(space, "brute", floor, None, jobs, None)
    space = upclosed_shifted_space(n, constraint)
    return _run(space, "shifted-bb", floor, 1 << n, jobs, None)


# --------------------------------------------------------------------------
# sweeps and tables
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    ell: int
    lower: int
    best_j: int
    exact: int | None = None
    upper: int | None = None

    def csv_fields(self) -> list[str]:
        def cell(v):
            return "" if v is None else str(v)
        return [str(self.n), str(self.k), str(self.ell), str(self.lower),
                cell(self.exact), cell(self.upper), str(self.best_j)]


CSV_HEADER = ["n", "k", "ell", "lower", "exact", "upper", "best_j"]


def m_sweep(ell: int, n: int, k_range: Iterable[int]) -> list[SweepRow]:
    """Best prefix construction for each k, with the smallest maximizing j."""
    rows = []
    for k in k_range:
        value, j = lower_g(n, k, ell)
        closed = exact_g_closed(n, k, ell)
        up = upper_g(n, k, ell)
        rows.append(SweepRow(n, k, ell, value, j,
                             None if closed is None else closed[0],
                             None if up is None else up[0]))
    return rows


def first_k_reaching(rows: Sequence[SweepRow], j: int) -> int | None:
    """Smallest k in the sweep whose best j is at least ``j``."""
    for row in rows:
        if row.best_j >= j:
            return row.k
    return None


def monotonicity_violations(rows: Sequence[SweepRow]) -> list[tuple[int, int]]:
    """Consecutive rows where best_j drops, as (k_before, k_after)."""
    return [(a.k, b.k) for a, b in zip(rows, rows[1:]) if b.best_j < a.best_j]


@dataclass
class TableRow:
    n: int
    k: int
    ell: int
    lower: int
    best_j: int
    exact: int
    upper: int | None
    closed: int | None
    brute: int | None = None

    def csv_fields(self) -> list[str]:
        return [str(self.n), str(self.k), str(self.ell), str(self.lower), str(self.exact),
                "" if self.upper is None else str(self.upper), str(self.best_j)]


def exact_table(instances: Iterable[tuple[int, int, int]], brute_cap: int = BRUTE_CAP,
                jobs: int = 1) -> list[TableRow]:
    """Exact g over the given (n, k, ell) instances, smallest n first.

    Each instance is solved with ``shifted-bb`` (reusing earlier exact values as
    bounds) and, when ``C(n, k) <= brute_cap``, also by brute force.
    """
    tables: dict[int, dict[tuple[int, int], int]] = {}
    rows = []
    for n, k, ell in sorted(instances):
        table = tables.setdefault(ell, {})
        res = exact_g(n, k, ell, "shifted-bb", jobs=jobs, table=table)
        table[(n, k)] = res.value
        brute = None
        if binom(n, k) <= brute_cap:
            brute = exact_g(n, k, ell, "brute", jobs=jobs).value
        lower, j = lower_g(n, k, ell) if 3 * k >= ell else (0, 0)
        up = upper_g(n, k, ell)
        closed = exact_g_closed(n, k, ell)
        rows.append(TableRow(n, k, ell, lower, j, res.value, None if up is None else up[0],
                             None if closed is None else closed[0], brute))
    return rows


def verify_witness(result: SearchResult, ell: int) -> bool:
    return len(result.witness) == result.value and is_member_H(result.witness, ell)
