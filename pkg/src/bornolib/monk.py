"""The monk of a size function: the greatest maxitive measure below it.

On a finite universe the infimum over finite covers is a minimum.  Three
independent routes compute it:

* ``threshold``: sweep the table values; a cover by sets of size <= t exists
  iff the union of all such subsets of ``E`` contains ``A``.
* ``partition``: minimise the largest block over set partitions of ``A``
  (covers drawn from subsets of ``A`` only).
* ``closed_form``: ``max over x in A of min over B containing x of s(B)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bornology import SetFamily
from .core import INF, FiniteUniverse, Mask, Verdict, bits_of, min_max_partition
from .errors import BudgetZero, ContractViolation, UniverseTooLarge
from .geometry import (MAX_EXACT_POINTS, MetricSize, PointCloud, exact_cover_optimum,
                       farthest_first, metric_size)
from .sizes import SizeTable, require_size_function

#: Largest universe for the exhaustive monk routes.
MAX_EXACT_N = 12

METHODS = ("closed_form", "threshold", "partition")


@dataclass(frozen=True)
class MaxitiveMeasure:
    """A maxitive measure on a finite power set, determined by its singleton values."""

    universe: FiniteUniverse
    profile: tuple

    def __post_init__(self):
        prof = tuple(float(x) for x in self.profile)
        if len(prof) != self.universe.n:
            raise ContractViolation("one profile value per element is required")
        if any(np.isnan(x) or x < 0 for x in prof):
            raise ContractViolation("profile values must be nonnegative reals or inf")
        object.__setattr__(self, "profile", prof)

    def __call__(self, mask: Mask) -> float:
        return max((self.profile[i] for i in bits_of(self.universe.check(mask))), default=0.0)

    def as_table(self) -> SizeTable:
        return SizeTable(self.universe, _maxitive_values(np.array(self.profile), self.universe.n),
                         "maxitive")

    def is_below(self, s) -> bool:
        """``self <= s`` on every subset."""
        t = require_size_function(s)
        return bool((self.as_table().values <= t.values).all())


def _maxitive_values(profile: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(1 << n)
    for x in range(n):
        lo = out[: 1 << x]
        out[1 << x: 2 << x] = np.maximum(lo, profile[x])
    return out


def _table(s, limit: int) -> SizeTable:
    if s.universe.n > limit:
        raise UniverseTooLarge(f"universe of size {s.universe.n} exceeds the limit {limit}")
    return require_size_function(s)


def _profile(v: np.ndarray, n: int) -> np.ndarray:
    """``min over B containing x of v[B]`` for every element ``x``."""
    return np.array([v.reshape(-1, 2, 1 << x)[:, 1, :].min() for x in range(n)])


def greatest_maxitive_below(s) -> MaxitiveMeasure:
    """The greatest maxitive measure below ``s``; it coincides with the monk."""
    t = _table(s, 24)
    return MaxitiveMeasure(t.universe, tuple(_profile(t.values, t.universe.n)))


def monk_closed_form(s, a: Mask) -> float:
    t = _table(s, 24)
    a = t.universe.check(a)
    prof = _profile(t.values, t.universe.n)
    return max((float(prof[i]) for i in bits_of(a)), default=0.0)


def monk_bruteforce(s, a: Mask, pool: str = "ambient") -> float:
    """Monk of one subset by direct cover search.

    ``pool="ambient"`` draws cover members from all subsets of the universe;
    ``pool="restricted"`` only from subsets of ``a``.
    """
    t = _table(s, MAX_EXACT_N)
    a = t.universe.check(a)
    if a == 0:
        return 0.0
    v = t.values
    if pool == "ambient":
        order = np.argsort(v, kind="stable")
        covered = 0
        for m in order:
            covered |= int(m)
            if a & ~covered == 0:
                return float(v[m])
        return INF
    if pool == "restricted":
        return _partition_dp(v.tolist(), a)[a]
    raise ContractViolation(f"unknown cover pool {pool!r}")


def _partition_dp(v: list, top: int) -> dict:
    """Min over partitions of every ``B ⊆ top`` of the largest block value."""
    best = {0: 0.0}
    subs = []
    sub = 0
    while True:
        subs.append(sub)
        if sub == top:
            break
        sub = (sub - top) & top
    for b in subs[1:]:
        low = b & -b
        rest = b ^ low
        cur = INF
        s = rest
        while True:
            c = s | low
            val = v[c]
            other = best[b ^ c]
            if other > val:
                val = other
            if val < cur:
                cur = val
            if s == 0:
                break
            s = (s - 1) & rest
        best[b] = cur
    return best


def monk_table(s, method: str = "closed_form") -> SizeTable:
    """The monk on every subset, by the chosen route."""
    limit = 24 if method == "closed_form" else MAX_EXACT_N
    t = _table(s, limit)
    u, v = t.universe, t.values
    n = u.n
    if method == "closed_form":
        out = _maxitive_values(_profile(v, n), n)
    elif method == "threshold":
        order = np.argsort(v, kind="stable")
        stages = []
        covered = 0
        for m in order:
            grown = covered | int(m)
            if grown != covered or not stages:
                stages.append((grown, float(v[m])))
                covered = grown
        masks = np.arange(1 << n)
        out = np.full(1 << n, INF)
        for cover, value in reversed(stages):
            out[(masks & ~cover) == 0] = value
        out[0] = 0.0
    elif method == "partition":
        best = _partition_dp(v.tolist(), u.full)
        out = np.array([best[m] for m in range(1 << n)])
    else:
        raise ContractViolation(f"unknown monk method {method!r}")
    return SizeTable(u, out, f"monk({t.name})")


def is_maxitive(s) -> Verdict:
    """Check ``s(A ∪ A') = max(s(A), s(A'))``; the first failing pair is the witness.

    Exhaustive over pairs for ``n <= 8``; beyond that the equivalent
    singleton test ``s(A) = max over x in A of s({x})`` is used.
    """
    t = s if isinstance(s, SizeTable) else SizeTable.from_function(s.universe, s)
    u, v = t.universe, t.values
    if v[0] != 0:
        return Verdict.violation("empty", u.wrap(0))
    n = u.n
    if n <= 8:
        masks = np.arange(1 << n)
        union = v[masks[:, None] | masks[None, :]]
        bad = np.argwhere(union != np.maximum.outer(v, v))
        if len(bad):
            return Verdict.violation("maxitive", u.wrap(int(bad[0, 0])), u.wrap(int(bad[0, 1])))
        return Verdict.passed()
    single = np.array([v[1 << x] for x in range(n)])
    bad = np.flatnonzero(_maxitive_values(single, n) != v)
    if len(bad):
        a = int(bad[0])
        return Verdict.violation("maxitive", u.wrap(a & -a), u.wrap(a ^ (a & -a)))
    return Verdict.passed()


def constrained_monk_exact(s, a: Mask, n_parts: int) -> float:
    """Least largest-member size over covers of ``a`` by at most ``n_parts`` sets.

    Partitions of ``a`` suffice for monotone ``s``.  Point-cloud sizes accept
    subsets of up to 14 points; table sizes need a universe of at most 12.
    """
    a = s.universe.check(a)
    if a == 0:
        return 0.0
    if n_parts < 1:
        raise BudgetZero("a nonempty set needs at least one cover member")
    if isinstance(s, MetricSize):
        return exact_cover_optimum(s.cloud, a, n_parts, s.kind)
    t = _table(s, MAX_EXACT_N)
    v = t.values
    value, _ = min_max_partition(bits_of(a), n_parts, lambda m: float(v[m]))
    return value


def constrained_monk_gonzalez(cloud: PointCloud, subset: Mask | None, n_parts: int,
                              size_kind: str) -> float:
    """Largest group size of the farthest-first grouping; at most twice the optimum."""
    if n_parts < 1:
        raise BudgetZero("need at least one group")
    if not cloud.indices(subset):
        raise ContractViolation("farthest-first grouping needs a nonempty subset")
    size = metric_size(cloud, size_kind)
    return max(size(g) for g in farthest_first(cloud, subset, n_parts).groups)


def constrained_chain(s, a: Mask, k_max: int) -> list[float]:
    """``[ρ°_1(a), ..., ρ°_k_max(a)]``."""
    return [constrained_monk_exact(s, a, k) for k in range(1, k_max + 1)]


def rho_bounded_family(s, totally: bool = False) -> SetFamily:
    """Subsets with finite monk, or with zero monk when ``totally``.

    With ``totally`` the family is a bornology only for total ``s``.
    """
    t = _table(s, MAX_EXACT_N)
    v = monk_table(t).values
    keep = v == 0 if totally else np.isfinite(v)
    return SetFamily(t.universe, np.flatnonzero(keep).tolist())


__all__ = [
    "MAX_EXACT_N", "MAX_EXACT_POINTS", "METHODS", "MaxitiveMeasure", "constrained_chain",
    "constrained_monk_exact", "constrained_monk_gonzalez", "greatest_maxitive_below",
    "is_maxitive", "monk_bruteforce", "monk_closed_form", "monk_table", "rho_bounded_family",
]
