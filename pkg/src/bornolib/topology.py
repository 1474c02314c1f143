"""Finite topological spaces and the topological statements about size functions.

A finite topology is the family of up-sets of its specialisation preorder.
Each point ``x`` has a smallest open neighbourhood ``U_x``; then

* the smallest open superset of ``A`` is the union of ``U_x`` over ``x in A``,
* the closure of ``A`` is ``{y : U_y meets A}``,
* the interior of ``A`` is ``{y : U_y ⊆ A}``.

Every subset of a finite space is compact, so the Heine-Borel bornology is
the whole power set and "compact" quantifiers range over all subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bornology import SetFamily, check_bornology
from .core import FiniteUniverse, Mask, Verdict, bits_of
from .errors import ContractViolation, HypothesisNotMet, InvalidBornology
from .monk import MAX_EXACT_N, monk_table, rho_bounded_family
from .sizes import DEFAULT_GRID, SizeTable, is_total, random_size_table, require_size_function


def _upsets(ups: Sequence[int], n: int) -> list[int]:
    return [m for m in range(1 << n) if all(ups[x] & ~m == 0 for x in bits_of(m))]


def _close_preorder(ups: list[int]) -> list[int]:
    """Reflexive-transitive closure of an ``up`` adjacency given as masks."""
    n = len(ups)
    ups = [u | (1 << i) for i, u in enumerate(ups)]
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if ups[i] & bit:
                ups[i] |= ups[k]
    return ups


class FiniteTopology:
    """The open sets of a topology on a finite universe."""

    def __init__(self, universe: FiniteUniverse, opens: Iterable[Mask]):
        universe.require_enumerable()
        fam = opens if isinstance(opens, SetFamily) else SetFamily(universe, opens)
        if fam.universe != universe:
            raise ContractViolation("open sets belong to a different universe")
        present = fam.members
        if 0 not in present or universe.full not in present:
            raise ContractViolation("a topology must contain the empty set and the universe")
        n = universe.n
        ups = []
        for x in range(n):
            u = universe.full
            for g in present:
                if g >> x & 1:
                    u &= g
            ups.append(u)
        if set(_upsets(ups, n)) != present:
            raise ContractViolation(f"not closed under unions and intersections: "
                                    f"{_closure_witness(universe, fam)}")
        self.universe = universe
        self.opens = fam
        self.min_open = tuple(ups)

    @classmethod
    def from_preorder(cls, universe: FiniteUniverse, pairs: Iterable[tuple[int, int]]):
        """Topology of up-sets; a pair ``(i, j)`` means ``i <= j``."""
        ups = [0] * universe.n
        for i, j in pairs:
            if not (0 <= i < universe.n and 0 <= j < universe.n):
                raise ContractViolation(f"pair ({i}, {j}) outside the universe")
            ups[i] |= 1 << j
        ups = _close_preorder(ups)
        return cls(universe, _upsets(ups, universe.n))

    @classmethod
    def discrete(cls, universe: FiniteUniverse):
        return cls(universe, range(1 << universe.n))

    @classmethod
    def indiscrete(cls, universe: FiniteUniverse):
        return cls(universe, {0, universe.full})

    @classmethod
    def sierpinski(cls):
        """``E = {a, b}`` with opens ``∅, {a}, E``."""
        u = FiniteUniverse(("a", "b"))
        return cls(u, [0, 0b01, 0b11])

    def is_open(self, a: Mask) -> bool:
        return self.universe.check(a) in self.opens.members

    def open_hull(self, a: Mask) -> int:
        """Smallest open set containing ``a``."""
        out = 0
        for x in bits_of(self.universe.check(a)):
            out |= self.min_open[x]
        return out

    def closure(self, a: Mask) -> int:
        a = self.universe.check(a)
        out = 0
        for y, u in enumerate(self.min_open):
            if u & a:
                out |= 1 << y
        return out

    def interior(self, a: Mask) -> int:
        a = self.universe.check(a)
        out = 0
        for y, u in enumerate(self.min_open):
            if u & ~a == 0:
                out |= 1 << y
        return out

    def closure_table(self) -> np.ndarray:
        return _hull_table([_down(self.min_open, y) for y in range(self.universe.n)],
                           self.universe.n)

    def open_hull_table(self) -> np.ndarray:
        return _hull_table(self.min_open, self.universe.n)

    def __repr__(self):
        return f"FiniteTopology(n={self.universe.n}, opens={len(self.opens)})"


def _down(ups: Sequence[int], x: int) -> int:
    """Closure of ``{x}``: the points whose smallest neighbourhood contains ``x``."""
    out = 0
    for y, u in enumerate(ups):
        if u >> x & 1:
            out |= 1 << y
    return out


def _hull_table(singles: Sequence[int], n: int) -> np.ndarray:
    """Union-extension of per-element hulls to every mask."""
    out = np.zeros(1 << n, dtype=np.int64)
    for x in range(n):
        out[1 << x: 2 << x] = out[: 1 << x] | singles[x]
    return out


def _closure_witness(u: FiniteUniverse, fam: SetFamily) -> str:
    present = fam.members
    members = fam.masks
    for i, g in enumerate(members):
        for h in members[i + 1:]:
            if g | h not in present:
                return f"union of {u.format(g)} and {u.format(h)}"
            if g & h not in present:
                return f"intersection of {u.format(g)} and {u.format(h)}"
    return "unknown"


# --------------------------------------------------------------------------
# size functions on topological spaces
# --------------------------------------------------------------------------

def rho_plus(t: FiniteTopology, s, a: Mask) -> float:
    """Infimum of ``s`` over the open supersets of ``a``."""
    a = t.universe.check(a)
    return min(s(g) for g in t.opens.members if a & ~g == 0)


def rho_plus_table(t: FiniteTopology, s) -> SizeTable:
    """``rho_plus`` on every subset, via the smallest open superset (needs monotone ``s``)."""
    v = require_size_function(s).values
    return SizeTable(t.universe, v[t.open_hull_table()], "rho_plus")


def _first_mismatch(u: FiniteUniverse, x: np.ndarray, y: np.ndarray, kind: str) -> Verdict:
    bad = np.flatnonzero(x != y)
    if len(bad):
        return Verdict.violation(kind, u.wrap(int(bad[0])))
    return Verdict.passed()


def is_closed_size(t: FiniteTopology, s) -> Verdict:
    """``s(closure(A)) == s(A)`` for every ``A``."""
    v = require_size_function(s).values
    return _first_mismatch(t.universe, v[t.closure_table()], v, "closed")


def is_weakly_outer_continuous(t: FiniteTopology, s) -> Verdict:
    """``rho_plus == s`` on every (compact) subset."""
    v = require_size_function(s).values
    return _first_mismatch(t.universe, v[t.open_hull_table()], v, "outer-continuity")


def is_locally_bounded(t: FiniteTopology, fam: SetFamily, neighborhood: str = "interior",
                       validate: bool = True) -> Verdict:
    """Every open ``G`` around ``x`` contains a bounded neighbourhood of ``x``.

    ``neighborhood="interior"`` counts ``B`` as a neighbourhood of ``x`` when
    ``x`` is interior to ``B``; ``"open"`` additionally requires ``B`` open.
    The witness of a failure is ``(x, G)``.
    """
    if neighborhood not in ("interior", "open"):
        raise ContractViolation(f"unknown neighborhood reading {neighborhood!r}")
    if validate:
        verdict = check_bornology(fam)
        if not verdict:
            raise InvalidBornology(f"family is not a bornology: {verdict}")
    u = t.universe
    opens = t.opens.members
    bounded = fam.masks
    for x in range(u.n):
        ux = t.min_open[x]
        for g in t.opens.masks:
            if not g >> x & 1:
                continue
            found = False
            for b in bounded:
                if b & ~g or ux & ~b:
                    continue
                if neighborhood == "open" and b not in opens:
                    continue
                found = True
                break
            if not found:
                return Verdict.violation("locally-bounded", u.labels[x], u.wrap(g))
    return Verdict.passed()


def heine_borel_family(t: FiniteTopology) -> SetFamily:
    """Relatively compact subsets; on a finite space, all of them."""
    return SetFamily.power_set(t.universe)


@dataclass
class CompactReport:
    checked: int = 0
    weakly_outer_continuous: bool = False
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_compact_proposition(t: FiniteTopology, s, method: str = "closed_form") -> CompactReport:
    """Check ``monk(K) <= max over x in K of rho_plus({x})`` for every ``K``.

    When ``s`` is weakly outer-continuous, also check that the monk equals
    ``max over x in K of s({x})`` and is finite.
    """
    tab = require_size_function(s)
    if tab.universe.n > MAX_EXACT_N:
        raise ContractViolation(f"verification is limited to n <= {MAX_EXACT_N}")
    u = t.universe
    n = u.n
    monk = monk_table(tab, method).values
    plus = rho_plus_table(t, tab).values
    woc = bool(is_weakly_outer_continuous(t, tab))
    report = CompactReport(checked=1 << n, weakly_outer_continuous=woc)
    plus_single = np.array([plus[1 << x] for x in range(n)])
    bound = _sup_table(plus_single, n)
    for k in np.flatnonzero(monk > bound):
        report.violations.append({"kind": "inequality", "subset": u.wrap(int(k)),
                                  "monk": float(monk[k]), "bound": float(bound[k])})
    if woc:
        single = np.array([tab.values[1 << x] for x in range(n)])
        sup = _sup_table(single, n)
        for k in np.flatnonzero((monk != sup) | ~np.isfinite(monk)):
            report.violations.append({"kind": "equality", "subset": u.wrap(int(k)),
                                      "monk": float(monk[k]), "bound": float(sup[k])})
    return report


def _sup_table(single: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(1 << n)
    for x in range(n):
        out[1 << x: 2 << x] = np.maximum(out[: 1 << x], single[x])
    return out


@dataclass
class TheoremReport:
    """Outcome per item; ``None`` marks an item skipped because ``s`` is not total."""

    item1: Verdict
    item2: Verdict | None
    item3: Verdict | None

    @property
    def ok(self) -> bool:
        return all(v is None or v.ok for v in (self.item1, self.item2, self.item3))


def _locally_bounded_or_invalid(t, fam, neighborhood) -> Verdict:
    verdict = check_bornology(fam)
    if not verdict:
        return Verdict.violation("invalid-bornology", *verdict.witness)
    return is_locally_bounded(t, fam, neighborhood, validate=False)


def verify_theorem_oc(t: FiniteTopology, s, neighborhood: str = "interior") -> TheoremReport:
    """Check the three consequences of weak outer-continuity.

    1. the space is locally bounded for the bornology of sets with finite monk;
    2. for total ``s``, every relatively compact set has monk 0;
    3. for total ``s`` (finite spaces are locally compact), the space is
       locally bounded for the bornology of sets with zero monk.

    Raises :class:`HypothesisNotMet` when ``s`` is not weakly outer-continuous.
    """
    tab = require_size_function(s)
    if tab.universe.n > MAX_EXACT_N:
        raise ContractViolation(f"verification is limited to n <= {MAX_EXACT_N}")
    gate = is_weakly_outer_continuous(t, tab)
    if not gate:
        raise HypothesisNotMet(f"size function is not weakly outer-continuous: {gate}")
    item1 = _locally_bounded_or_invalid(t, rho_bounded_family(tab), neighborhood)
    if not is_total(tab):
        return TheoremReport(item1, None, None)
    monk = monk_table(tab).values
    compact = heine_borel_family(t)
    nonzero = [m for m in compact.masks if monk[m] != 0]
    item2 = (Verdict.violation("totally-bounded", t.universe.wrap(nonzero[0]))
             if nonzero else Verdict.passed())
    item3 = _locally_bounded_or_invalid(t, rho_bounded_family(tab, totally=True), neighborhood)
    return TheoremReport(item1, item2, item3)


# --------------------------------------------------------------------------
# random instances
# --------------------------------------------------------------------------

def random_preorder_ups(n: int, rng: np.random.Generator, density: float | None = None) -> list[int]:
    """Up-masks of the reflexive-transitive closure of a random relation."""
    if density is None:
        density = float(rng.uniform(0.05, 0.5))
    ups = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                ups[i] |= 1 << j
    return _close_preorder(ups)


def random_topology(u: FiniteUniverse, rng: np.random.Generator,
                    density: float | None = None) -> FiniteTopology:
    return FiniteTopology(u, _upsets(random_preorder_ups(u.n, rng, density), u.n))


def hull_size_table(u: FiniteUniverse, hull: np.ndarray, rng: np.random.Generator,
                    value_grid=DEFAULT_GRID, total: bool = False) -> SizeTable:
    """Random size table constant on the fibres of a hull operator: ``s(A) = g(hull(A))``."""
    singles = [int(hull[1 << x]) for x in range(u.n)]
    g = random_size_table(u, rng, value_grid, finite_within=singles,
                          zero_within=singles if total else None)
    return SizeTable(u, g.values[hull], "hull")


def random_closed_size_table(t: FiniteTopology, rng: np.random.Generator,
                             value_grid=DEFAULT_GRID, total: bool = False) -> SizeTable:
    """Random size table satisfying ``s(closure(A)) = s(A)``."""
    return hull_size_table(t.universe, t.closure_table(), rng, value_grid, total)


def random_woc_size_table(t: FiniteTopology, rng: np.random.Generator,
                          value_grid=DEFAULT_GRID, total: bool = False) -> SizeTable:
    """Random weakly outer-continuous size table: ``s(A) = g(smallest open ⊇ A)``."""
    return hull_size_table(t.universe, t.open_hull_table(), rng, value_grid, total)
