"""Closure-constrained branch and bound over candidate sets.

Candidates are indexed ``0..m-1`` in a fixed order.  Each candidate may
*require* earlier candidates (it can only be chosen if they are), which lets
one engine enumerate three search spaces:

* every subfamily (no requirements),
* shifted k-uniform families (a candidate requires its dominance lower covers),
* upward-closed shifted families (a candidate also requires its one-element
  supersets; candidates are ordered by decreasing size).

Triple constraints are precomputed into ``pair_ok[i][j]``: the bitmask of
candidates ``c`` for which the triple ``(i, j, c)`` is admissible.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import Value
from typing import Callable, Iterator, Sequence

import numpy as np

from .core import dual_score, incidence_matrix, mask_key, triple_score
from .shifting import lower_covers


class ScoreAtLeast:
    """Triple constraint ``d(A, B, C) >= ell``."""

    def __init__(self, ell: int):
        self.ell = ell

    def __call__(self, a: int, b: int, c: int) -> bool:
        return triple_score(a, b, c) >= self.ell

    def vector(self, inter, sizes, i, j):
        return inter[i, j] + inter[i] + inter[j] >= self.ell

    def __repr__(self):
        return f"d>={self.ell}"


class DualAtMost:
    """Triple constraint ``dual(A, B, C) <= x``."""

    def __init__(self, x: int):
        self.x = x

    def __call__(self, a: int, b: int, c: int) -> bool:
        return dual_score(a, b, c) <= self.x

    def vector(self, inter, sizes, i, j):
        d = inter[i, j] + inter[i] + inter[j]
        return 2 * (sizes[i] + sizes[j] + sizes) - d <= self.x

    def __repr__(self):
        return f"dual<={self.x}"


TripleConstraint = ScoreAtLeast | DualAtMost | Callable[[int, int, int], bool]


def _bits_to_int(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(np.uint8), bitorder="little").tobytes(), "little")


@dataclass
class Space:
    """A candidate list with requirement structure and pairwise compatibilities."""

    n: int
    items: list[int]
    req: list[int]
    dep: list[int]
    pair_ok: list[list[int]]

    @property
    def size(self) -> int:
        return len(self.items)


def _dependents(req: list[int]) -> list[int]:
    m = len(req)
    children: list[list[int]] = [[] for _ in range(m)]
    for w, r in enumerate(req):
        while r:
            low = r & -r
            children[low.bit_length() - 1].append(w)
            r ^= low
    dep = [0] * m
    for v in range(m - 1, -1, -1):
        acc = 0
        for w in children[v]:
            if w <= v:
                raise ValueError("requirement points forward in the candidate order")
            acc |= (1 << w) | dep[w]
        dep[v] = acc
    return dep


def _pair_table(items: Sequence[int], n: int, constraint: TripleConstraint) -> list[list[int]]:
    m = len(items)
    table = [[0] * m for _ in range(m)]
    if hasattr(constraint, "vector") and m:
        x = incidence_matrix(items, n)
        inter = x @ x.T
        sizes = np.diag(inter).copy()
        for i in range(m):
            for j in range(i + 1, m):
                v = _bits_to_int(constraint.vector(inter, sizes, i, j))
                table[i][j] = table[j][i] = v
        return table
    for i, j in combinations(range(m), 2):
        v = 0
        for c in range(m):
            if c != i and c != j and constraint(items[i], items[j], items[c]):
                v |= 1 << c
        table[i][j] = table[j][i] = v
    return table


def build_space(n: int, items: Sequence[int], requires: Callable[[int], Sequence[int]] | None,
                constraint: TripleConstraint) -> Space:
    items = list(items)
    index = {m: i for i, m in enumerate(items)}
    req = []
    for m in items:
        r = 0
        if requires is not None:
            for need in requires(m):
                if need not in index:
                    raise ValueError(f"required set {need:#x} is not a candidate")
                r |= 1 << index[need]
        req.append(r)
    return Space(n, items, req, _dependents(req), _pair_table(items, n, constraint))


def free_space(n: int, masks: Sequence[int], constraint: TripleConstraint) -> Space:
    return build_space(n, sorted(set(masks), key=mask_key), None, constraint)


def shifted_uniform_space(n: int, k: int, constraint: TripleConstraint) -> Space:
    items = sorted((sum(1 << (e - 1) for e in c) for c in combinations(range(1, n + 1), k)),
                   key=mask_key)
    return build_space(n, items, lower_covers, constraint)


def upclosed_shifted_space(n: int, constraint: TripleConstraint) -> Space:
    def key(m):
        size, elems = mask_key(m)
        return (-size, elems)

    items = sorted(range(1 << n), key=key)

    def requires(m):
        ups = [m | (1 << i) for i in range(n) if not m >> i & 1]
        return ups + lower_covers(m)

    return build_space(n, items, requires, constraint)


# --------------------------------------------------------------------------
# the search
# --------------------------------------------------------------------------

@dataclass
class Outcome:
    count: int
    chosen: tuple[int, ...]
    nodes: int


State = tuple[tuple[int, ...], int]  # (chosen indices, allowed bitmask)


def _include(space: Space, chosen: tuple[int, ...], allowed: int, v: int) -> int:
    rest = allowed & ~(1 << v)
    na = rest
    row = space.pair_ok
    for u in chosen:
        na &= row[u][v]
    removed = rest & ~na
    dep = space.dep
    while removed:
        low = removed & -removed
        na &= ~dep[low.bit_length() - 1]
        removed ^= low
    return na


def _exclude(space: Space, allowed: int, v: int) -> int:
    return allowed & ~(1 << v) & ~space.dep[v]


def _search(space: Space, start: State, best: int, stop_at: int | None,
            shared=None) -> Outcome:
    """Depth-first include/exclude search below ``start``.

    Only families strictly larger than ``best`` are recorded.  ``shared`` is an
    optional cross-process incumbent; it prunes only strictly smaller bounds so
    the first maximum family in search order is still found.
    """
    nodes = 0
    best_chosen: tuple[int, ...] | None = None
    req = space.req
    done = False

    def dfs(chosen: tuple[int, ...], cmask: int, allowed: int) -> None:
        nonlocal nodes, best, best_chosen, done
        nodes += 1
        count = len(chosen)
        bound = count + allowed.bit_count()
        if bound <= best:
            return
        if shared is not None and bound < shared.value:
            return
        if not allowed:
            best, best_chosen = count, chosen
            if shared is not None:
                with shared.get_lock():
                    if count > shared.value:
                        shared.value = count
            if stop_at is not None and best >= stop_at:
                done = True
            return
        v = (allowed & -allowed).bit_length() - 1
        if req[v] & ~cmask == 0:
            dfs(chosen + (v,), cmask | (1 << v), _include(space, chosen, allowed, v))
            if done:
                return
        dfs(chosen, cmask, _exclude(space, allowed, v))

    chosen, allowed = start
    cmask = 0
    for c in chosen:
        cmask |= 1 << c
    dfs(chosen, cmask, allowed)
    if best_chosen is None:
        return Outcome(-1, (), nodes)
    return Outcome(best, best_chosen, nodes)


def root_state(space: Space) -> State:
    return ((), (1 << space.size) - 1)


def split_states(space: Space, depth: int) -> list[State]:
    """Subtree roots after ``depth`` decisions, in search order."""
    out: list[State] = []

    def expand(chosen, allowed, left):
        if left == 0 or not allowed:
            out.append((chosen, allowed))
            return
        v = (allowed & -allowed).bit_length() - 1
        cmask = sum(1 << c for c in chosen)
        if space.req[v] & ~cmask == 0:
            expand(chosen + (v,), _include(space, chosen, allowed, v), left - 1)
        expand(chosen, _exclude(space, allowed, v), left - 1)

    expand((), (1 << space.size) - 1, depth)
    return out


_WORKER: dict = {}


def _init_worker(space, shared, best, stop_at):
    _WORKER.update(space=space, shared=shared, best=best, stop_at=stop_at)


def _run_state(state: State) -> Outcome:
    w = _WORKER
    return _search(w["space"], state, w["best"], w["stop_at"], w["shared"])


def maximize(space: Space, floor: int = 0, stop_at: int | None = None, jobs: int = 1) -> Outcome:
    """Largest admissible family in ``space``; ties go to the first in search order.

    ``floor`` must be a size known to be attainable; ``stop_at`` a proven upper
    bound (the search ends as soon as it is reached).
    """
    best = floor - 1
    if jobs <= 1:
        out = _search(space, root_state(space), best, stop_at)
    else:
        depth = max(1, min(space.size, (jobs * 4).bit_length()))
        states = split_states(space, depth)
        shared = Value("i", best)
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                                 initargs=(space, shared, best, stop_at)) as pool:
            results = list(pool.map(_run_state, states))
        nodes = sum(r.nodes for r in results)
        top = max(r.count for r in results)
        first = next(r for r in results if r.count == top)
        out = Outcome(first.count, first.chosen, nodes)
    if out.count < floor:
        raise AssertionError(f"search found {out.count} below the attainable floor {floor}")
    return out


def enumerate_families(space: Space, max_size: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every admissible family of the space (as index tuples), each exactly once."""
    stack: list[tuple[tuple[int, ...], int]] = [root_state(space)]
    req = space.req
    while stack:
        chosen, allowed = stack.pop()
        if not allowed:
            yield chosen
            continue
        v = (allowed & -allowed).bit_length() - 1
        cmask = 0
        for c in chosen:
            cmask |= 1 << c
        stack.append((chosen, _exclude(space, allowed, v)))
        if req[v] & ~cmask == 0 and (max_size is None or len(chosen) < max_size):
            stack.append((chosen + (v,), _include(space, chosen, allowed, v)))


def default_jobs() -> int:
    return os.cpu_count() or 1
