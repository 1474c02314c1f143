"""Finite universes, subset masks, extended reals and combinatorial enumeration.

Subsets of a universe with ``n`` elements are encoded as ``n``-bit integers:
bit ``i`` is set iff element ``i`` belongs to the subset.  Structures that own
a universe (families, size tables, topologies) store plain integers
internally; :class:`SubsetMask` is the user-facing wrapper that remembers the
universe and decodes to labels.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import ContractViolation, UniverseTooLarge

#: Largest universe for which the full power set is ever enumerated.
MAX_POWERSET_N = 24

INF = math.inf


# --------------------------------------------------------------------------
# extended nonnegative reals
# --------------------------------------------------------------------------

def ext(value) -> float:
    """Coerce ``value`` to an extended nonnegative real.

    ``math.inf`` (and the strings ``"inf"``/``"infinity"``) is the only
    infinite value.  Negative numbers and NaN are rejected.
    """
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "+inf", "infinity", "∞"):
            return INF
        value = float(value)
    x = float(value)
    if math.isnan(x) or x < 0:
        raise ContractViolation(f"not an extended nonnegative real: {value!r}")
    return x


def ext_max(values: Iterable[float]) -> float:
    """Supremum of a finite collection; the empty supremum is 0."""
    return max(values, default=0.0)


def ext_min(values: Iterable[float]) -> float:
    """Infimum of a finite collection; the empty infimum is infinity."""
    return min(values, default=INF)


def format_ext(x: float) -> str:
    """Render with 17 significant digits, ``inf`` for infinity."""
    if x == INF:
        return "inf"
    return format(float(x), ".17g")


def ext_to_json(x: float):
    return "inf" if x == INF else float(x)


# --------------------------------------------------------------------------
# universes and masks
# --------------------------------------------------------------------------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order, starting at 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class FiniteUniverse:
    """An ordered set of distinct labels; element ``i`` is ``labels[i]``."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise ContractViolation("universe labels must be pairwise distinct")
        object.__setattr__(self, "_index", index)

    @classmethod
    def of_size(cls, n: int, prefix: str = "") -> "FiniteUniverse":
        """Universe with labels ``prefix1 .. prefixn``."""
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self):
        return self.n

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise ContractViolation(f"{label!r} is not an element of the universe") from None

    def mask(self, labels: Iterable) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def subset(self, *labels) -> "SubsetMask":
        return SubsetMask(self.mask(labels), self)

    def wrap(self, mask: "Mask") -> "SubsetMask":
        return SubsetMask(operator.index(mask), self)

    def decode(self, mask: "Mask") -> list[str]:
        return [self.labels[i] for i in bits_of(self.check(mask))]

    def check(self, mask: "Mask") -> int:
        """Return ``mask`` as an int, rejecting bits outside the universe."""
        if isinstance(mask, SubsetMask) and mask.universe != self:
            raise ContractViolation("subset belongs to a different universe")
        m = operator.index(mask)
        if m < 0 or m >> self.n:
            raise ContractViolation(f"mask {m:#x} has bits outside a universe of size {self.n}")
        return m

    def require_enumerable(self, limit: int = MAX_POWERSET_N) -> None:
        if self.n > limit:
            raise UniverseTooLarge(f"universe of size {self.n} exceeds the limit {limit}")

    def format(self, mask: "Mask") -> str:
        return "{" + ",".join(self.decode(mask)) + "}"


@dataclass(frozen=True, slots=True)
class SubsetMask:
    """A subset of a :class:`FiniteUniverse`, stored as a bit mask.

    Usable anywhere an integer mask is accepted (it implements ``__index__``).
    """

    bits: int
    universe: FiniteUniverse

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe.n:
            raise ContractViolation(f"mask {self.bits:#x} has bits outside the universe")

    def __index__(self):
        return self.bits

    def _other(self, other) -> int:
        return self.universe.check(other)

    def __or__(self, other):
        return SubsetMask(self.bits | self._other(other), self.universe)

    def __and__(self, other):
        return SubsetMask(self.bits & self._other(other), self.universe)

    def __sub__(self, other):
        return SubsetMask(self.bits & ~self._other(other), self.universe)

    def __invert__(self):
        return SubsetMask(self.universe.full & ~self.bits, self.universe)

    def __le__(self, other):
        return self.bits & ~self._other(other) == 0

    def __ge__(self, other):
        return self._other(other) & ~self.bits == 0

    def __contains__(self, label):
        return bool(self.bits >> self.universe.index(label) & 1)

    def __len__(self):
        return popcount(self.bits)

    def __iter__(self):
        return iter(self.labels)

    @property
    def labels(self) -> list[str]:
        return self.universe.decode(self.bits)

    def __repr__(self):
        return self.universe.format(self.bits)


Mask = Union[int, SubsetMask]


def enumerate_subsets(u: FiniteUniverse) -> Iterator[SubsetMask]:
    """Yield all ``2**n`` subsets of ``u`` in increasing mask order."""
    u.require_enumerable()
    for m in range(1 << u.n):
        yield SubsetMask(m, u)


def enumerate_covers(a: Mask, pool: Iterable[Mask], max_parts: int | None = None,
                     universe: FiniteUniverse | None = None) -> Iterator[list[SubsetMask]]:
    """Yield every list of distinct pool members whose union contains ``a``.

    Lists are canonical (members sorted by mask value), enumerated by
    increasing length and then lexicographically; at most ``max_parts``
    members are used (``None`` means unbounded).  ``pool`` may be a
    :class:`~bornolib.bornology.SetFamily`, whose universe is then used.
    """
    if universe is None:
        universe = getattr(pool, "universe", None) or getattr(a, "universe", None)
    if universe is None:
        raise ContractViolation("cannot determine the universe of the cover search")
    target = universe.check(a)
    members = sorted({universe.check(b) for b in pool})
    limit = len(members) if max_parts is None else min(max_parts, len(members))
    if max_parts is not None and max_parts < 0:
        raise ContractViolation("max_parts must be nonnegative")
    for k in range(limit + 1):
        for combo in combinations(members, k):
            union = 0
            for b in combo:
                union |= b
            if target & ~union == 0:
                yield [SubsetMask(b, universe) for b in combo]


# --------------------------------------------------------------------------
# verdicts
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check: ``ok`` or the first violation found.

    Truthy iff ok.  ``witness`` holds the offending objects (masks, elements).
    """

    ok: bool
    kind: str | None = None
    witness: tuple = ()

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def violation(cls, kind: str, *witness) -> "Verdict":
        return cls(False, kind, tuple(witness))

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.kind} violation, witness {', '.join(map(repr, self.witness))}"


# --------------------------------------------------------------------------
# set partitions
# --------------------------------------------------------------------------

def restricted_growth_strings(m: int, k: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield the restricted growth strings of length ``m`` with at most ``k`` classes.

    A string ``s`` has ``s[0] == 0`` and ``s[i] <= max(s[:i]) + 1``; it encodes
    the set partition putting item ``i`` in block ``s[i]``.
    """
    if k is None:
        k = m
    if m == 0:
        yield ()
        return
    if k <= 0:
        return
    s = [0] * m

    def rec(i, top):
        if i == m:
            yield tuple(s)
            return
        for b in range(min(top + 2, k)):
            s[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def min_max_partition(items: Sequence[int], k: int, size: Callable[[int], float],
                      upper: float = INF, upper_blocks: Sequence[int] | None = None
                      ) -> tuple[float, list[int]]:
    """Minimise the largest block size over partitions of ``items`` into <= k blocks.

    ``items`` are element indices, visited in the given order (putting far
    apart elements first tightens pruning).  ``size`` maps a block mask to its
    size and must be monotone.  ``upper``/``upper_blocks`` seed the search with
    a known feasible partition.  Returns ``(value, blocks)``.

    Branch and bound over restricted growth strings: a partial assignment is
    abandoned once its largest block, or the largest singleton still to be
    placed, reaches the incumbent.
    """
    m = len(items)
    if m == 0:
        return 0.0, []
    if k < 1:
        raise ContractViolation("need at least one block")
    memo: dict[int, float] = {}

    def sz(mask):
        v = memo.get(mask)
        if v is None:
            v = memo[mask] = size(mask)
        return v

    single = [sz(1 << i) for i in items]
    if k >= m:
        return max(single), [1 << i for i in items]
    tail = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        tail[i] = max(tail[i + 1], single[i])

    best = upper
    best_blocks = list(upper_blocks) if upper_blocks is not None else None
    blocks: list[int] = []

    def rec(i, current):
        nonlocal best, best_blocks
        if best_blocks is not None and max(current, tail[i]) >= best:
            return
        if i == m:
            best, best_blocks = current, list(blocks)
            return
        bit = 1 << items[i]
        for j in range(len(blocks)):
            old = blocks[j]
            blocks[j] = old | bit
            rec(i + 1, max(current, sz(old | bit)))
            blocks[j] = old
        if len(blocks) < k:
            blocks.append(bit)
            rec(i + 1, max(current, single[i]))
            blocks.pop()

    rec(0, 0.0)
    return best, best_blocks
