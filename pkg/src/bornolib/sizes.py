"""Size functions: table-backed, counting, and opaque evaluators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import INF, FiniteUniverse, Mask, Verdict, popcount
from .errors import ContractViolation, UniverseTooLarge

DEFAULT_GRID = (0.0, 0.5, 1.0, 1.5, 2.0, INF)

#: Largest universe accepted by the random table generator.
MAX_RANDOM_N = 12


class SizeTable:
    """A set function on all ``2**n`` subsets, stored as a read-only array.

    Construction only checks that the values are extended nonnegative reals;
    use :func:`check_size_function` for the size-function axioms.
    """

    __slots__ = ("universe", "values", "name")

    def __init__(self, universe: FiniteUniverse, values, name: str = "table"):
        universe.require_enumerable()
        arr = np.array(values, dtype=float)
        if arr.shape != (1 << universe.n,):
            raise ContractViolation(
                f"expected {1 << universe.n} values, got shape {arr.shape}")
        if np.isnan(arr).any() or (arr < 0).any():
            raise ContractViolation("size values must be nonnegative reals or inf")
        arr.flags.writeable = False
        self.universe = universe
        self.values = arr
        self.name = name

    @classmethod
    def from_function(cls, universe: FiniteUniverse, fn: Callable[[int], float],
                      name: str = "table") -> "SizeTable":
        universe.require_enumerable()
        return cls(universe, [fn(m) for m in range(1 << universe.n)], name)

    def __call__(self, mask: Mask) -> float:
        return float(self.values[self.universe.check(mask)])

    def __eq__(self, other):
        if not isinstance(other, SizeTable):
            return NotImplemented
        return self.universe == other.universe and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.universe, self.values.tobytes()))

    def __repr__(self):
        return f"SizeTable({self.name!r}, n={self.universe.n})"


@dataclass(frozen=True)
class SizeFunction:
    """An opaque size function: an evaluator on masks plus a descriptor."""

    evaluator: Callable[[int], float]
    name: str
    universe: FiniteUniverse

    def __call__(self, mask: Mask) -> float:
        return float(self.evaluator(self.universe.check(mask)))


def tabulate(s) -> SizeTable:
    """Evaluate a size function on every subset of its universe."""
    if isinstance(s, SizeTable):
        return s
    if hasattr(s, "tabulate"):
        return s.tabulate()
    return SizeTable.from_function(s.universe, s, s.name)


def check_size_function(s) -> Verdict:
    """Check ``s(∅) = 0``, finiteness on singletons and monotonicity.

    Monotonicity is checked along one-element extensions ``A ⊂ A ∪ {x}``;
    the first failure in (A, x) order is reported.
    """
    t = tabulate(s)
    u, v = t.universe, t.values
    if v[0] != 0:
        return Verdict.violation("empty", u.wrap(0))
    for i in range(u.n):
        if v[1 << i] == INF:
            return Verdict.violation("singleton", u.wrap(1 << i))
    first = None
    for x in range(u.n):
        step = 1 << x
        view = v.reshape(-1, 2, step)
        bad = np.argwhere(view[:, 0, :] > view[:, 1, :])
        if len(bad):
            a = int(bad[0, 0]) * 2 * step + int(bad[0, 1])
            if first is None or (a, x) < first:
                first = (a, x)
    if first is not None:
        a, x = first
        return Verdict.violation("monotone", u.wrap(a), u.wrap(a | 1 << x))
    return Verdict.passed()


def require_size_function(s) -> SizeTable:
    """Tabulate ``s`` and raise :class:`ContractViolation` unless it is a size function."""
    t = tabulate(s)
    verdict = check_size_function(t)
    if not verdict:
        raise ContractViolation(f"{t.name} is not a size function: {verdict}")
    return t


def is_total(s, sample: Iterable | None = None) -> bool:
    """True iff ``s`` vanishes on the sampled singletons (all of them by default)."""
    u = s.universe
    idx = range(u.n) if sample is None else [
        x if isinstance(x, int) else u.index(x) for x in sample]
    return all(s(1 << i) == 0 for i in idx)


def counting_size(u: FiniteUniverse) -> SizeFunction:
    """The cardinality ``|A|``."""
    return SizeFunction(popcount, "counting", u)


def submask_max(values: np.ndarray, n: int) -> np.ndarray:
    """``out[A] = max(values[B] for B ⊆ A)``, the smallest monotone majorant."""
    out = np.array(values, dtype=float)
    for x in range(n):
        view = out.reshape(-1, 2, 1 << x)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_size_table(u: FiniteUniverse, seed=None, value_grid: Sequence[float] = DEFAULT_GRID,
                      finite_within: Sequence[int] | None = None,
                      total: bool = False, zero_within: Sequence[int] | None = None
                      ) -> SizeTable:
    """Sample a random size table with values from ``value_grid``.

    Raw values are drawn uniformly from the grid, with singletons drawn from
    its finite part and ``∅ ↦ 0``; a monotone repair pass then lifts each
    value to the max over its subsets.  Masks listed in ``finite_within`` get
    finite raw values on all their subsets too, so they stay finite after
    repair.  ``total=True`` zeroes the singletons and ``zero_within`` zeroes
    every subset of the listed masks.  ``seed`` is an int or a
    :class:`numpy.random.Generator`.
    """
    if u.n > MAX_RANDOM_N:
        raise UniverseTooLarge(f"random tables are limited to n <= {MAX_RANDOM_N}")
    rng = _rng(seed)
    grid = np.array(value_grid, dtype=float)
    finite = grid[np.isfinite(grid)]
    if finite.size == 0:
        raise ContractViolation("value grid needs at least one finite value")
    raw = grid[rng.integers(0, grid.size, size=1 << u.n)]
    keep_finite = np.zeros(1 << u.n, dtype=bool)
    for i in range(u.n):
        keep_finite[1 << i] = True
    for top in finite_within or ():
        keep_finite[top] = True
    # a mask must be finite if it sits below any marked mask
    keep_finite = _supermask_any(keep_finite, u.n)
    fill = finite[rng.integers(0, finite.size, size=1 << u.n)]
    raw = np.where(keep_finite & ~np.isfinite(raw), fill, raw)
    raw[0] = 0.0
    zero = np.zeros(1 << u.n, dtype=bool)
    if total:
        for i in range(u.n):
            zero[1 << i] = True
    for top in zero_within or ():
        zero[top] = True
    raw[_supermask_any(zero, u.n)] = 0.0
    return SizeTable(u, submask_max(raw, u.n), "random")


def _supermask_any(flags: np.ndarray, n: int) -> np.ndarray:
    """``out[A]`` is true iff ``flags[B]`` for some ``B ⊇ A``."""
    out = flags.copy()
    for x in range(n):
        view = out.reshape(-1, 2, 1 << x)
        np.logical_or(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return out
