"""Closed-form bounds for g(n, k, ell) and h(n, ell).

``g(n, k, ell)`` is the largest k-uniform family on ``[n]`` whose distinct
triples all score at least ``ell``; ``h(n, ell)`` is the same maximum over
arbitrary families.  Every value here is an exact Python integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping


class RegimeError(ValueError):
    """A bound was requested outside the parameter range where it is proven."""


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero whenever ``b < 0``, ``a < 0`` or ``a < b``."""
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise RegimeError(f"precondition {what} fails")


def upper_g2(n: int, k: int) -> int:
    _require(k >= 2, "k >= 2")
    _require(n >= 3 * k - 2, f"n >= 3k-2 (n={n}, 3k-2={3 * k - 2})")
    return binom(n + 1, k - 1) + binom(n, k - 2)


def upper_g3(n: int, k: int) -> int:
    _require(k >= 2, "k >= 2")
    _require(n >= 3 * k - 3, f"n >= 3k-3 (n={n}, 3k-3={3 * k - 3})")
    return binom(n, k - 1) + 2 * binom(n, k - 3) + 3 * binom(n - 1, k - 3)


def upper_g(n: int, k: int, ell: int) -> tuple[int, str] | None:
    """Closed-form upper bound with its source tag, or None outside its regime."""
    try:
        if ell == 2:
            return upper_g2(n, k), "thm1"
        if ell == 3:
            return upper_g3(n, k), "thm2"
    except RegimeError:
        pass
    return None


def f_j_ell(j: int, ell: int) -> int:
    """Prefix length such that any three j-subsets of it score at least ``ell``."""
    if ell < 0 or 3 * j < ell:
        raise ValueError(f"need 3j >= ell >= 0, got j={j}, ell={ell}")
    if 3 * j < 2 * ell:
        return 2 * j - (-(-ell // 3))
    return 3 * j - ell


def construction_size(n: int, k: int, f: int, j: int) -> int:
    """``sum_{i=j}^{k} C(f, i) C(n-f, k-i)``: k-sets meeting ``[f]`` in at least j points.

    Computed with a term-ratio recurrence; :func:`construction_size_direct` is
    the plain sum.
    """
    if f > n or f < 0 or k > n:
        return 0
    rest = n - f
    lo = max(j, k - rest, 0)
    hi = min(k, f)
    if lo > hi:
        return 0
    term = math.comb(f, lo) * math.comb(rest, k - lo)
    total = term
    for i in range(lo, hi):
        term = term * (f - i) * (k - i) // ((i + 1) * (rest - k + i + 1))
        total += term
    return total


def construction_size_direct(n: int, k: int, f: int, j: int) -> int:
    return sum(binom(f, i) * binom(n - f, k - i) for i in range(j, k + 1))


def lower_g(n: int, k: int, ell: int) -> tuple[int, int]:
    """Best prefix construction: ``(size, smallest maximizing j)``."""
    if 3 * k < ell:
        raise ValueError(f"need 3k >= ell, got k={k}, ell={ell}")
    best, best_j = -1, None
    for j in range(max(0, -(-ell // 3)), k + 1):
        v = construction_size(n, k, f_j_ell(j, ell), j)
        if v > best:
            best, best_j = v, j
    return best, best_j


def exact_g_closed(n: int, k: int, ell: int) -> tuple[int, str] | None:
    """Exact ``g(n, k, ell)`` where a closed form is known, with a source tag.

    ``trivial``: every triple of distinct k-sets already scores enough
    (``3k <= 2n``, which also covers ``n = 3k - ell`` there).  ``base``:
    ``n = 3k - ell`` with ``2n < 3k``.  ``remark``: the remaining small-``n``
    cases up to the proven threshold ``6k - 3n`` (weaker than sometimes
    quoted; see the README).  ``thm4``: ``ell`` in {2, 3}, ``k >= 2`` and
    ``n >= 4k^3`` where the star is optimal.
    """
    if n < 1 or k < 0:
        return None
    if ell <= 0:
        return binom(n, k), "trivial"
    if 3 * k <= 2 * n and ell <= 3 * k - n:
        return binom(n, k), "trivial"
    if n == 3 * k - ell:
        return binom(n, k), "base"
    if 2 * n < 3 * k and ell <= 6 * k - 3 * n:
        return binom(n, k), "remark"
    if ell in (2, 3) and k >= 2 and n >= 4 * k ** 3:
        return binom(n - 1, k - 1), "thm4"
    return None


Table = Mapping[tuple[int, int], int] | Callable[[int, int], int]


def recursion_upper(n: int, k: int, ell: int, table: Table) -> int:
    """``g(n-1, k, ell) + g(n-1, k-1, ell)`` looked up in ``table``.

    ``table`` maps ``(n, k)`` to an exact value or any valid upper bound for
    this ``ell``; a callable ``table(n, k)`` also works.
    """
    _require(ell in (2, 3), f"ell in {{2, 3}} (ell={ell})")
    _require(k >= 3, f"k >= 3 (k={k})")
    _require(n > 3 * k - ell, f"n > 3k-ell (n={n}, 3k-ell={3 * k - ell})")
    look = table if callable(table) else (lambda a, b: table[(a, b)])
    return look(n - 1, k) + look(n - 1, k - 1)


def h_threshold(p: int) -> int:
    return 2 ** (3 * p + 2) * p * p + p + 1


def h_formula(n: int, p: int, q: int) -> int:
    """Size of the level-(p+1) construction for allowance ``x = 6p + q``."""
    if not 0 <= q <= 5:
        raise ValueError(f"q must be in [0, 5], got {q}")
    base = sum(binom(n, i) for i in range(p + 1))
    if q <= 1:
        return base
    if q == 2:
        return base + binom(n - 2, p - 1)
    if q <= 4:
        return base + binom(n - 1, p)
    return base + binom(n - 1, p) + binom(n - 2, p)


def h_closed(n: int, x: int) -> int | None:
    """Exact ``h(n, 3n - x)`` where proven, else None."""
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    p, q = divmod(x, 6)
    if p == 0:
        return min(2 if x <= 3 else 3, 2 ** n)
    if n >= h_threshold(p):
        return h_formula(n, p, q)
    return None


def alpha1() -> float:
    """Root of ``3g^3 - 8g^2 + 6g - 1`` in (0, 1/3)."""
    return (5 - math.sqrt(13)) / 6


def alpha1_polynomial(g: float) -> float:
    return 3 * g ** 3 - 8 * g ** 2 + 6 * g - 1


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

@dataclass
class BoundReport:
    n: int
    k: int | None = None
    ell: int | None = None
    x: int | None = None
    lower: int | None = None
    lower_witness: dict = field(default_factory=dict)
    upper: int | None = None
    upper_source: str | None = None
    exact: int | None = None
    exact_source: str | None = None
    preconditions: dict[str, bool] = field(default_factory=dict)

    def consistent(self) -> bool:
        vals = [v for v in (self.lower, self.exact, self.upper) if v is not None]
        return vals == sorted(vals)

    def to_json(self) -> dict:
        out: dict = {"n": self.n}
        for key in ("k", "ell", "x"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.lower is not None:
            out["lower"] = {"value": str(self.lower), **self.lower_witness}
        if self.upper is not None:
            out["upper"] = {"value": str(self.upper), "source": self.upper_source}
        if self.exact is not None:
            out["exact"] = {"value": str(self.exact), "source": self.exact_source}
        out["preconditions"] = dict(self.preconditions)
        return out


def report_g(n: int, k: int, ell: int) -> BoundReport:
    rep = BoundReport(n=n, k=k, ell=ell)
    rep.preconditions = {
        "3k>=ell": 3 * k >= ell,
        "n>=3k-2": n >= 3 * k - 2,
        "n>=3k-3": n >= 3 * k - 3,
        "n>3k-ell": n > 3 * k - ell,
        "n==3k-ell": n == 3 * k - ell,
        "n>=4k^3": n >= 4 * k ** 3,
        "3k<=2n": 3 * k <= 2 * n,
    }
    if 3 * k >= ell:
        rep.lower, j = lower_g(n, k, ell)
        rep.lower_witness = {"j": j}
    up = upper_g(n, k, ell)
    if up is not None:
        rep.upper, rep.upper_source = up
    ex = exact_g_closed(n, k, ell)
    if ex is not None:
        rep.exact, rep.exact_source = ex
    return rep


def report_h(n: int, x: int) -> BoundReport:
    p, q = divmod(x, 6)
    rep = BoundReport(n=n, x=x, ell=3 * n - x)
    rep.preconditions = {
        "p>=1": p >= 1,
        "n>=p+2": n >= p + 2,
        "n>=2^(3p+2)p^2+p+1": n >= h_threshold(p) if p >= 1 else False,
    }
    if p >= 1 and n >= p + 2:
        rep.lower = h_formula(n, p, q)
        rep.lower_witness = {"construction": "nonuniform-dual", "p": p, "q": q}
    value = h_closed(n, x)
    if value is not None:
        rep.exact = value
        rep.exact_source = "remark" if p == 0 else "thm5"
    return rep
