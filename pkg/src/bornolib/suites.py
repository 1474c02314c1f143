"""Randomised property suites driven by ``bornolib fuzz``.

Each suite checks one family of invariants on a single random instance and
returns a JSON-serialisable record with an ``ok`` flag.  Instance ``i`` of a
suite draws all randomness from ``default_rng([seed, crc32(name), i])``, so
records are reproducible one by one and independent of execution order.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .bornology import (MapSpec, SetFamily, check_bornology, generate_bornology,
                        is_bounded_map, pullback_bornology)
from .core import FiniteUniverse, ext_to_json, submasks
from .errors import BornoError, UnknownSuite
from .geometry import (PointCloud, SIZE_KINDS, TOL, exact_cover_optimum, min_enclosing_ball,
                       size_relation_check)
from .monk import (MaxitiveMeasure, constrained_monk_gonzalez, greatest_maxitive_below,
                   is_maxitive, monk_table, rho_bounded_family)
from .oracles import ternary_meb_radius
from .sizes import check_size_function, is_total, random_size_table
from .topology import (FiniteTopology, is_closed_size, is_weakly_outer_continuous,
                       random_closed_size_table, random_topology, random_woc_size_table,
                       verify_compact_proposition, verify_theorem_oc)


@dataclass(frozen=True)
class Suite:
    name: str
    fn: Callable[[np.random.Generator, int], dict]
    default_max: int
    doc: str


SUITES: dict[str, Suite] = {}


def suite(name: str, default_max: int):
    def register(fn):
        SUITES[name] = Suite(name, fn, default_max, (fn.__doc__ or "").strip())
        return fn
    return register


def instance_rng(seed: int, name: str, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode()), index])


def _universe(rng, max_n: int, min_n: int = 1) -> FiniteUniverse:
    return FiniteUniverse.of_size(int(rng.integers(min_n, max_n + 1)))


def _table(rng, u, total=None):
    if total is None:
        total = bool(rng.random() < 0.3)
    return random_size_table(u, rng, total=total)


def _cloud(rng, max_points: int, dims=(1, 2, 3)) -> PointCloud:
    d = int(rng.choice(dims))
    m = int(rng.integers(1, max_points + 1))
    return PointCloud(rng.normal(size=(m, d)).round(6))


def _first(vals: np.ndarray) -> int | None:
    bad = np.flatnonzero(vals)
    return int(bad[0]) if len(bad) else None


# --------------------------------------------------------------------------
# size functions and monks
# --------------------------------------------------------------------------

@suite("random-size-axioms", 8)
def _random_size_axioms(rng, max_n):
    """Generated tables satisfy the size-function axioms."""
    u = _universe(rng, max_n)
    verdict = check_size_function(_table(rng, u))
    return {"n": u.n, "ok": verdict.ok, "verdict": str(verdict)}


@suite("monk-closed-form", 8)
def _monk_closed_form(rng, max_n):
    """Closed form, threshold sweep and partition search give the same monk."""
    u = _universe(rng, max_n)
    s = _table(rng, u)
    closed = monk_table(s, "closed_form").values
    thresh = monk_table(s, "threshold").values
    part = monk_table(s, "partition").values
    bad = (closed != thresh) | (closed != part)
    return {"n": u.n, "ok": not bad.any(), "discrepancies": int(bad.sum()),
            "first": _first(bad)}


@suite("monk-proposition", 6)
def _monk_proposition(rng, max_n):
    """Monk below the size, equal on singletons, maxitive, idempotent, a size function."""
    u = _universe(rng, max_n)
    s = _table(rng, u)
    v = s.values
    monk = monk_table(s)
    m = monk.values
    failures = []
    if (m > v).any():
        failures.append("below")
    if any(m[1 << x] != v[1 << x] for x in range(u.n)):
        failures.append("singleton")
    if not is_maxitive(monk):
        failures.append("maxitive")
    if not np.array_equal(monk_table(monk).values, m):
        failures.append("idempotent")
    if not check_size_function(monk):
        failures.append("size-function")
    if is_total(s) and not is_total(monk):
        failures.append("total")
    return {"n": u.n, "ok": not failures, "failures": failures}


@suite("monk-maxitivity", 8)
def _monk_maxitivity(rng, max_n):
    """The monk of the union is the max of the monks."""
    u = _universe(rng, max_n)
    verdict = is_maxitive(monk_table(_table(rng, u), "threshold"))
    return {"n": u.n, "ok": verdict.ok, "verdict": str(verdict)}


@suite("greatest-maxitive", 6)
def _greatest_maxitive(rng, max_n, samples: int = 25):
    """Every maxitive measure below the size lies below the monk."""
    u = _universe(rng, max_n)
    s = _table(rng, u)
    monk = monk_table(s).values
    top = np.array(greatest_maxitive_below(s).profile)
    violations = 0
    tried = 0
    for _ in range(samples):
        scaled = MaxitiveMeasure(u, tuple(top * rng.choice([0.0, 0.25, 0.5, 1.0], size=u.n)))
        free = MaxitiveMeasure(u, tuple(rng.choice([0.0, 0.5, 1.0, 1.5, 2.0], size=u.n)))
        for mu in (scaled, free):
            if mu.is_below(s):
                tried += 1
                violations += int((mu.as_table().values > monk).any())
    own = is_maxitive(monk_table(s)).ok and bool((monk <= s.values).all())
    return {"n": u.n, "ok": violations == 0 and own, "measures": tried,
            "violations": violations}


@suite("rho-bounded-bornology", 8)
def _rho_bounded(rng, max_n):
    """(Totally) rho-bounded subsets form a bornology."""
    u = _universe(rng, max_n)
    s = _table(rng, u)
    verdict = check_bornology(rho_bounded_family(s))
    record = {"n": u.n, "total": is_total(s), "ok": verdict.ok, "verdict": str(verdict)}
    if record["total"]:
        tv = check_bornology(rho_bounded_family(s, totally=True))
        record["ok"] = record["ok"] and tv.ok
        record["totally_verdict"] = str(tv)
    return record


# --------------------------------------------------------------------------
# topology
# --------------------------------------------------------------------------

@suite("closure-kuratowski", 6)
def _closure_kuratowski(rng, max_n):
    """Closure is extensive, idempotent, additive and fixes the empty set."""
    u = _universe(rng, max_n)
    t = random_topology(u, rng)
    cl = t.closure_table()
    masks = np.arange(1 << u.n)
    ok = (cl[0] == 0 and ((masks & ~cl) == 0).all() and np.array_equal(cl[cl], cl)
          and np.array_equal(cl[masks[:, None] | masks[None, :]], cl[:, None] | cl[None, :]))
    return {"n": u.n, "opens": len(t.opens), "ok": bool(ok)}


@suite("closedness-preservation", 6)
def _closedness(rng, max_n):
    """The monk of a closed size function is closed."""
    u = _universe(rng, max_n)
    t = random_topology(u, rng)
    s = random_closed_size_table(t, rng)
    pre = is_closed_size(t, s)
    post = is_closed_size(t, monk_table(s))
    return {"n": u.n, "opens": len(t.opens), "ok": pre.ok and post.ok,
            "input": str(pre), "monk": str(post)}


@suite("compact-proposition", 6)
def _compact(rng, max_n):
    """monk(K) <= sup rho_plus({x}); equality when weakly outer-continuous."""
    u = _universe(rng, max_n)
    t = random_topology(u, rng)
    s = random_woc_size_table(t, rng) if rng.random() < 0.5 else _table(rng, u)
    report = verify_compact_proposition(t, s)
    return {"n": u.n, "woc": report.weakly_outer_continuous, "ok": report.ok,
            "violations": len(report.violations)}


def theorem_instance(rng, max_n):
    """A weakly outer-continuous (topology, size table) pair of one of three kinds."""
    u = _universe(rng, max_n)
    kind = ("discrete", "woc-table", "filtered")[int(rng.integers(3))]
    total = bool(rng.random() < 0.5)
    if kind == "discrete":
        return kind, FiniteTopology.discrete(u), _table(rng, u, total)
    t = random_topology(u, rng)
    if kind == "filtered":
        for _ in range(50):
            s = _table(rng, u, total)
            if is_weakly_outer_continuous(t, s):
                return kind, t, s
        kind = "woc-table"
    return kind, t, random_woc_size_table(t, rng, total=total)


@suite("theorem-oc", 6)
def _theorem(rng, max_n):
    """Local boundedness and total boundedness under weak outer-continuity."""
    kind, t, s = theorem_instance(rng, max_n)
    report = verify_theorem_oc(t, s)
    strict = verify_theorem_oc(t, s, neighborhood="open")
    fmt = lambda v: None if v is None else str(v)
    return {"n": t.universe.n, "kind": kind, "ok": report.ok and strict.ok,
            "item1": fmt(report.item1), "item2": fmt(report.item2), "item3": fmt(report.item3)}


# --------------------------------------------------------------------------
# bornologies
# --------------------------------------------------------------------------

def _random_map(rng, dom, cod) -> MapSpec:
    return MapSpec(dom, cod, tuple(int(j) for j in rng.integers(0, cod.n, size=dom.n)))


@suite("pullback", 6)
def _pullback(rng, max_n):
    """Pullbacks of bornologies are bornologies."""
    dom, cod = _universe(rng, max_n), _universe(rng, max_n)
    f = _random_map(rng, dom, cod)
    verdict = check_bornology(pullback_bornology(f, SetFamily.power_set(cod)))
    return {"n": dom.n, "m": cod.n, "ok": verdict.ok, "verdict": str(verdict)}


@suite("bounded-composition", 5)
def _composition(rng, max_n):
    """Composites of bounded maps are bounded."""
    us = [_universe(rng, max_n) for _ in range(3)]
    f, g = _random_map(rng, us[0], us[1]), _random_map(rng, us[1], us[2])
    fams = [SetFamily.power_set(u) for u in us]
    ok = (not (is_bounded_map(f, fams[0], fams[1]) and is_bounded_map(g, fams[1], fams[2]))
          or is_bounded_map(f.then(g), fams[0], fams[2]))
    return {"sizes": [u.n for u in us], "ok": bool(ok)}


@suite("generate-minimality", 4)
def _generate(rng, max_n):
    """Generated bornologies pass the axioms, are idempotent and contain the base."""
    u = _universe(rng, max_n)
    count = int(rng.integers(1, 4))
    base = [int(rng.integers(0, 1 << u.n)) for _ in range(count)] + [1 << i for i in range(u.n)
                                                                    if rng.random() < 0.5]
    missing = u.full & ~np.bitwise_or.reduce(np.array(base + [0]))
    base.append(int(missing))
    fam = generate_bornology(SetFamily(u, base))
    ok = (check_bornology(fam).ok and generate_bornology(fam) == fam
          and all(sub in fam.members for b in base for sub in submasks(b)))
    return {"n": u.n, "base": len(set(base)), "ok": bool(ok)}


# --------------------------------------------------------------------------
# geometry
# --------------------------------------------------------------------------

@suite("meb-oracle", 12)
def _meb_oracle(rng, max_points):
    """Welzl radius matches the nested ternary oracle within 1e-6 and encloses every point."""
    cloud = _cloud(rng, max_points)
    center, radius = min_enclosing_ball(cloud)
    oracle = ternary_meb_radius(cloud.points)
    reach = float(np.sqrt(((cloud.points - center) ** 2).sum(axis=1)).max())
    ok = abs(radius - oracle) <= 1e-6 and reach <= radius + TOL
    return {"m": cloud.m, "d": cloud.dim, "radius": radius, "oracle": oracle, "ok": bool(ok)}


def _random_subset(rng, cloud) -> int:
    return int(rng.integers(1, 1 << cloud.m))


@suite("size-relations", 12)
def _size_relations(rng, max_points):
    """radius <= diameter <= 2 * radius."""
    cloud = _cloud(rng, max_points, dims=(1, 2, 3, 5))
    rep = size_relation_check(cloud, _random_subset(rng, cloud))
    return {"m": cloud.m, "d": cloud.dim, "alpha": rep.alpha, "beta": rep.beta, "ok": rep.ok}


@suite("monk-relations", 8)
def _monk_relations(rng, max_points):
    """k-constrained Hausdorff <= Kuratowski <= 2 x Hausdorff for k = 1, 2, 3."""
    cloud = _cloud(rng, max_points)
    sub = _random_subset(rng, cloud)
    rows = []
    ok = True
    for k in (1, 2, 3):
        a = exact_cover_optimum(cloud, sub, k, "alpha")
        b = exact_cover_optimum(cloud, sub, k, "beta")
        ok = ok and a <= b + TOL and b <= 2 * a + TOL
        rows.append([a, b])
    return {"m": cloud.m, "d": cloud.dim, "values": rows, "ok": bool(ok)}


@suite("gonzalez-ratio", 8)
def _gonzalez(rng, max_points):
    """Farthest-first groups are within a factor 2 of the exact optimum."""
    cloud = _cloud(rng, max_points)
    sub = _random_subset(rng, cloud)
    worst = 0.0
    ok = True
    for kind in SIZE_KINDS:
        for k in (1, 2, 3):
            exact = exact_cover_optimum(cloud, sub, k, kind)
            approx = constrained_monk_gonzalez(cloud, sub, k, kind)
            ok = ok and exact - TOL <= approx <= 2 * exact + TOL
            if exact > 0:
                worst = max(worst, approx / exact)
    return {"m": cloud.m, "d": cloud.dim, "worst_ratio": worst, "ok": bool(ok)}


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------

def _clean(value):
    if isinstance(value, float):
        return ext_to_json(value)
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return ext_to_json(float(value))
    return value


def run_instance(name: str, seed: int, index: int, max_size: int | None = None) -> dict:
    try:
        entry = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    rng = instance_rng(seed, name, index)
    try:
        body = entry.fn(rng, max_size or entry.default_max)
    except BornoError as exc:
        body = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
    return _clean({"suite": name, "instance": index, **body})


def run_suite(name: str, count: int, seed: int, max_size: int | None = None) -> Iterator[dict]:
    if name not in SUITES:
        raise UnknownSuite(name)
    for i in range(count):
        yield run_instance(name, seed, i, max_size)


def battery() -> list[str]:
    return list(SUITES)
