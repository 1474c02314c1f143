"""Bornologies over finite universes, stored as explicit families of masks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .core import (INF, FiniteUniverse, Mask, SubsetMask, Verdict, bits_of,
                   submasks)
from .errors import (ContractViolation, EmptyCloud, InvalidBornology,
                     NotCovering, NotDirected)


@dataclass(frozen=True)
class SetFamily:
    """A finite, deduplicated collection of subsets of one universe.

    Membership is exact; no closure property is implied.
    """

    universe: FiniteUniverse
    members: frozenset

    def __init__(self, universe: FiniteUniverse, members: Iterable[Mask] = ()):
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "members", frozenset(universe.check(m) for m in members))

    @classmethod
    def power_set(cls, universe: FiniteUniverse) -> "SetFamily":
        universe.require_enumerable()
        return cls(universe, range(1 << universe.n))

    @classmethod
    def from_labels(cls, universe: FiniteUniverse, sets: Iterable[Iterable]) -> "SetFamily":
        return cls(universe, (universe.mask(s) for s in sets))

    @property
    def masks(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, mask) -> bool:
        return self.universe.check(mask) in self.members

    def __iter__(self) -> Iterator[SubsetMask]:
        return (SubsetMask(m, self.universe) for m in self.masks)

    def __len__(self):
        return len(self.members)

    def union(self) -> int:
        out = 0
        for m in self.members:
            out |= m
        return out

    def issubset(self, other: "SetFamily") -> bool:
        return self.universe == other.universe and self.members <= other.members

    def is_power_set(self) -> bool:
        return len(self.members) == 1 << self.universe.n

    def __repr__(self):
        inner = ", ".join(self.universe.format(m) for m in self.masks)
        return f"SetFamily[{inner}]"


def check_bornology(fam: SetFamily) -> Verdict:
    """Check the three bornology axioms, reporting the first violation.

    Scan order: cover (lowest uncovered element), then union closure over
    member pairs in mask order, then downward closure by mask order.
    """
    u = fam.universe
    missing = u.full & ~fam.union()
    if missing:
        return Verdict.violation("cover", u.labels[bits_of(missing)[0]])
    if fam.is_power_set():
        return Verdict.passed()
    members = fam.masks
    present = fam.members
    for i, b in enumerate(members):
        for b2 in members[i + 1:]:
            if b | b2 not in present:
                return Verdict.violation("union", u.wrap(b), u.wrap(b2))
    for b in members:
        for sub in submasks(b):
            if sub not in present:
                return Verdict.violation("downward", u.wrap(sub), u.wrap(b))
    return Verdict.passed()


def _require_bornology(fam: SetFamily, what: str = "family") -> None:
    verdict = check_bornology(fam)
    if not verdict:
        raise InvalidBornology(f"{what} is not a bornology: {verdict}")


def generate_bornology(base: SetFamily) -> SetFamily:
    """Smallest bornology containing ``base``: its union closure, closed downward."""
    u = base.universe
    u.require_enumerable()
    missing = u.full & ~base.union()
    if missing:
        raise NotCovering(f"base does not cover element {u.labels[bits_of(missing)[0]]!r}")
    closed = set(base.members)
    frontier = list(closed)
    while frontier:
        fresh = []
        snapshot = list(closed)
        for a in frontier:
            for b in snapshot:
                c = a | b
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    down = set()
    for b in closed:
        if b not in down:
            down.update(submasks(b))
    return SetFamily(u, down)


@dataclass(frozen=True)
class MapSpec:
    """A total map between finite universes, as a tuple of codomain indices."""

    domain: FiniteUniverse
    codomain: FiniteUniverse
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(j) for j in self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.domain.n:
            raise ContractViolation("map must assign an image to every domain element")
        for j in image:
            if not 0 <= j < self.codomain.n:
                raise ContractViolation(f"image index {j} outside the codomain")

    @classmethod
    def from_labels(cls, domain, codomain, mapping: Mapping) -> "MapSpec":
        try:
            image = [codomain.index(mapping[x]) for x in domain.labels]
        except KeyError as exc:
            raise ContractViolation(f"map is undefined at {exc.args[0]!r}") from None
        return cls(domain, codomain, tuple(image))

    @classmethod
    def identity(cls, u: FiniteUniverse) -> "MapSpec":
        return cls(u, u, tuple(range(u.n)))

    @classmethod
    def constant(cls, domain, codomain, target: int = 0) -> "MapSpec":
        return cls(domain, codomain, (target,) * domain.n)

    def __call__(self, mask: Mask) -> int:
        """Direct image of a subset of the domain."""
        out = 0
        for i in bits_of(self.domain.check(mask)):
            out |= 1 << self.image[i]
        return out

    def image_table(self) -> list[int]:
        """Direct images of all ``2**n`` domain subsets, indexed by mask."""
        self.domain.require_enumerable()
        table = [0] * (1 << self.domain.n)
        for m in range(1, len(table)):
            low = m & -m
            table[m] = table[m ^ low] | (1 << self.image[low.bit_length() - 1])
        return table

    def then(self, g: "MapSpec") -> "MapSpec":
        """The composite ``g ∘ self``."""
        if g.domain != self.codomain:
            raise ContractViolation("maps are not composable")
        return MapSpec(self.domain, g.codomain, tuple(g.image[j] for j in self.image))


def pullback_bornology(f: MapSpec, b_prime: SetFamily) -> SetFamily:
    """The family of domain subsets whose direct image lies in ``b_prime``."""
    if b_prime.universe != f.codomain:
        raise ContractViolation("family does not live on the codomain of the map")
    _require_bornology(b_prime, "codomain family")
    table = f.image_table()
    present = b_prime.members
    return SetFamily(f.domain, (m for m, img in enumerate(table) if img in present))


def is_bounded_map(f: MapSpec, b_dom: SetFamily, b_cod: SetFamily) -> bool:
    """True iff ``f`` sends every member of ``b_dom`` into ``b_cod``."""
    if b_dom.universe != f.domain or b_cod.universe != f.codomain:
        raise ContractViolation("families do not match the map's domain and codomain")
    _require_bornology(b_dom, "domain family")
    _require_bornology(b_cod, "codomain family")
    present = b_cod.members
    return all(f(b) in present for b in b_dom.members)


@dataclass(frozen=True)
class FinitePoset:
    """A partial order given by its set of ``(i, j)`` pairs meaning ``i <= j``.

    Reflexive pairs are added; transitivity is checked, never completed.
    """

    universe: FiniteUniverse
    leq: frozenset

    def __post_init__(self):
        n = self.universe.n
        pairs = set()
        for i, j in self.leq:
            if not (0 <= i < n and 0 <= j < n):
                raise ContractViolation(f"pair ({i}, {j}) outside the universe")
            pairs.add((int(i), int(j)))
        pairs.update((i, i) for i in range(n))
        object.__setattr__(self, "leq", frozenset(pairs))
        for i, j in pairs:
            if i != j and (j, i) in pairs:
                raise ContractViolation(
                    f"not antisymmetric: {self.universe.labels[i]} and {self.universe.labels[j]}")
        for i, j in pairs:
            for k in range(n):
                if (j, k) in pairs and (i, k) not in pairs:
                    lab = self.universe.labels
                    raise ContractViolation(f"not transitive: {lab[i]} <= {lab[j]} <= {lab[k]}")

    @classmethod
    def from_labels(cls, universe: FiniteUniverse, pairs: Iterable) -> "FinitePoset":
        return cls(universe, frozenset((universe.index(a), universe.index(b)) for a, b in pairs))

    @classmethod
    def chain(cls, universe: FiniteUniverse) -> "FinitePoset":
        n = universe.n
        return cls(universe, frozenset((i, j) for i in range(n) for j in range(i, n)))

    def up(self, i: int) -> int:
        """Mask of the elements above ``i``."""
        out = 0
        for a, b in self.leq:
            if a == i:
                out |= 1 << b
        return out

    def directedness_witness(self) -> tuple[int, int] | None:
        ups = [self.up(i) for i in range(self.universe.n)]
        for x in range(self.universe.n):
            for y in range(x + 1, self.universe.n):
                if not ups[x] & ups[y]:
                    return x, y
        return None

    def is_directed(self) -> bool:
        return self.directedness_witness() is None


def poset_bornology(p: FinitePoset) -> SetFamily:
    """Family of subsets having an upper bound in a directed poset."""
    witness = p.directedness_witness()
    lab = p.universe.labels
    if witness is not None:
        x, y = witness
        raise NotDirected(f"{lab[x]} and {lab[y]} have no common upper bound",
                          (lab[x], lab[y]))
    p.universe.require_enumerable()
    ups = [p.up(i) for i in range(p.universe.n)]
    bounds = [p.universe.full] * (1 << p.universe.n)
    for m in range(1, len(bounds)):
        low = m & -m
        bounds[m] = bounds[m ^ low] & ups[low.bit_length() - 1]
    return SetFamily(p.universe, (m for m, ub in enumerate(bounds) if ub))


def metric_ball_bornology(cloud, radius_cap: float = INF) -> Callable[[Mask], bool]:
    """Predicate: does a subset of ``cloud`` lie in an open ball centred at a cloud point?

    Ball radii range below ``radius_cap``.  With the default infinite cap every
    subset of a finite cloud is bounded, so the predicate is constantly true;
    a finite cap gives a downward closed family that need not be union closed.
    """
    if cloud.m == 0:
        raise EmptyCloud("metric ball bornology needs a nonempty cloud")
    pts = cloud.points
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))

    def bounded(mask: Mask) -> bool:
        idx = bits_of(cloud.universe.check(mask))
        if not idx:
            return True
        reach = dist[:, idx].max(axis=1)
        return bool((reach < radius_cap).any())

    return bounded
