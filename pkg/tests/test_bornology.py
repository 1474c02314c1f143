import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bornolib import (ContractViolation, EmptyCloud, FinitePoset, FiniteUniverse,
                      InvalidBornology, MapSpec, NotCovering, NotDirected, PointCloud, SetFamily,
                      check_bornology, generate_bornology, is_bounded_map,
                      metric_ball_bornology, poset_bornology, pullback_bornology)


def _is_bornology_bits(fam_bits: int, n: int) -> bool:
    """Independent axiom test on a family encoded as a 2**n-bit integer."""
    members = [m for m in range(1 << n) if fam_bits >> m & 1]
    union = 0
    for m in members:
        union |= m
    if union != (1 << n) - 1:
        return False
    for a in members:
        for b in members:
            if not fam_bits >> (a | b) & 1:
                return False
        for c in range(1 << n):
            if c & ~a == 0 and not fam_bits >> c & 1:
                return False
    return True


# check_bornology

def test_power_set_is_bornology():
    u = FiniteUniverse.of_size(3)
    assert check_bornology(SetFamily.power_set(u))


def test_cover_violation():
    u = FiniteUniverse.of_size(1)
    v = check_bornology(SetFamily(u, [0]))
    assert not v and v.kind == "cover" and v.witness == ("1",)


def test_union_violation():
    u = FiniteUniverse.of_size(2)
    v = check_bornology(SetFamily.from_labels(u, [[], ["1"], ["2"]]))
    assert v.kind == "union"
    assert [w.labels for w in v.witness] == [["1"], ["2"]]


def test_downward_violation():
    u = FiniteUniverse.of_size(2)
    v = check_bornology(SetFamily.from_labels(u, [["1"], ["2"], ["1", "2"]]))
    assert v.kind == "downward" and v.witness[0].labels == []


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_check_bornology_matches_independent_axioms(n):
    for bits in range(1 << (1 << n)):
        fam = SetFamily(FiniteUniverse.of_size(n), [m for m in range(1 << n) if bits >> m & 1])
        assert bool(check_bornology(fam)) == _is_bornology_bits(bits, n)


def test_every_bornology_contains_finite_sets():
    u = FiniteUniverse.of_size(3)
    fam = generate_bornology(SetFamily.from_labels(u, [["1", "2"], ["3"]]))
    assert 0 in fam
    assert all(1 << i in fam for i in range(u.n))


# generate

def test_generate_examples():
    u = FiniteUniverse.of_size(3)
    for base in ([["1", "2"], ["2", "3"]], [["1"], ["2"], ["3"]], [["1", "2", "3"]]):
        fam = generate_bornology(SetFamily.from_labels(u, base))
        assert fam.is_power_set() and check_bornology(fam)


def test_generate_rejects_non_covering():
    u = FiniteUniverse.of_size(2)
    with pytest.raises(NotCovering):
        generate_bornology(SetFamily.from_labels(u, [["1"]]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generate_is_intersection_of_all_bornologies(n):
    """Enumerate every family on n <= 4 points; the result is the meet of the bornologies above the base."""
    u = FiniteUniverse.of_size(n)
    size = 1 << n
    bornologies = [bits for bits in range(1 << size) if _is_bornology_bits(bits, n)]
    rng = np.random.default_rng(n)
    for _ in range(20):
        base = [int(m) for m in rng.integers(0, size, size=int(rng.integers(1, 5)))]
        base += [1 << i for i in range(n) if rng.random() < 0.7]
        union = 0
        for b in base:
            union |= b
        if union != u.full:
            continue
        base_bits = sum({1 << m for m in base})
        meet = (1 << size) - 1
        for bits in bornologies:
            if bits & base_bits == base_bits:
                meet &= bits
        got = generate_bornology(SetFamily(u, base))
        assert sum(1 << m for m in got.masks) == meet


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_generate_minimal_against_random_bornologies(n):
    u = FiniteUniverse.of_size(n)
    rng = np.random.default_rng(100 + n)
    base = SetFamily(u, [int(rng.integers(0, u.full + 1)) for _ in range(3)] + [u.full])
    result = generate_bornology(base)
    for _ in range(100):
        # random supersets of the base, kept when they satisfy the axioms
        extra = rng.integers(0, 1 << n, size=int(rng.integers(0, 1 << n)))
        candidate = SetFamily(u, list(base.masks) + [int(e) for e in extra])
        if check_bornology(candidate):
            assert result.issubset(candidate)
    # with E in the base the only downward closed superset is 2^E
    assert result.masks == SetFamily.power_set(u).masks


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.data())
def test_generate_idempotent(n, data):
    u = FiniteUniverse.of_size(n)
    base = data.draw(st.lists(st.integers(0, u.full), min_size=1, max_size=6))
    base.append(u.full)
    once = generate_bornology(SetFamily(u, base))
    assert generate_bornology(once).masks == once.masks


# maps

def test_pullback_constant_map():
    dom, cod = FiniteUniverse.of_size(3), FiniteUniverse(("a", "b"))
    b_prime = SetFamily.power_set(cod)
    assert pullback_bornology(MapSpec.constant(dom, cod), b_prime).is_power_set()


def test_pullback_identity():
    u = FiniteUniverse.of_size(3)
    assert pullback_bornology(MapSpec.identity(u), SetFamily.power_set(u)).is_power_set()


def test_pullback_rejects_non_covering_target():
    dom, cod = FiniteUniverse.of_size(3), FiniteUniverse(("a", "b"))
    f = MapSpec.from_labels(dom, cod, {"1": "a", "2": "a", "3": "b"})
    with pytest.raises(InvalidBornology):
        pullback_bornology(f, SetFamily.from_labels(cod, [[], ["a"]]))


def test_pullback_matches_definition():
    dom, cod = FiniteUniverse.of_size(4), FiniteUniverse(("a", "b", "c"))
    f = MapSpec.from_labels(dom, cod, {"1": "a", "2": "b", "3": "b", "4": "c"})
    b_prime = SetFamily.power_set(cod)
    got = pullback_bornology(f, b_prime)
    expect = [m for m in range(16) if f(m) in b_prime]
    assert got.masks == expect
    assert check_bornology(got)


def test_map_spec_validation():
    u = FiniteUniverse.of_size(2)
    with pytest.raises(ContractViolation):
        MapSpec(u, u, (0,))
    with pytest.raises(ContractViolation):
        MapSpec(u, u, (0, 5))
    with pytest.raises(ContractViolation):
        MapSpec.from_labels(u, u, {"1": "1"})


def test_direct_image():
    dom, cod = FiniteUniverse.of_size(3), FiniteUniverse(("a", "b"))
    f = MapSpec.from_labels(dom, cod, {"1": "a", "2": "a", "3": "b"})
    assert cod.decode(f(dom.subset("1", "2"))) == ["a"]
    assert f.image_table() == [f(m) for m in range(8)]


def test_bounded_identity():
    u = FiniteUniverse.of_size(3)
    b = SetFamily.power_set(u)
    assert is_bounded_map(MapSpec.identity(u), b, b)


def test_bounded_map_from_singleton_bornology():
    dom, cod = FiniteUniverse.of_size(3), FiniteUniverse(("a", "b"))
    f = MapSpec.constant(dom, cod, 1)
    b_dom = generate_bornology(SetFamily(dom, [1 << i for i in range(3)]))
    assert is_bounded_map(f, b_dom, SetFamily.power_set(cod))


def test_bounded_map_rejects_invalid_codomain_family():
    u = FiniteUniverse.of_size(2)
    bad = SetFamily.from_labels(u, [[], ["1"], ["2"]])
    with pytest.raises(InvalidBornology):
        is_bounded_map(MapSpec.identity(u), SetFamily.power_set(u), bad)


def _random_map(rng, dom, cod):
    return MapSpec(dom, cod, tuple(int(j) for j in rng.integers(0, cod.n, size=dom.n)))


def test_pullback_and_composition_randomised():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (FiniteUniverse.of_size(int(rng.integers(1, 6)), p) for p in "xyz")
        f, g = _random_map(rng, a, b), _random_map(rng, b, c)
        ba, bb, bc = (SetFamily.power_set(x) for x in (a, b, c))
        assert check_bornology(pullback_bornology(f, bb))
        if is_bounded_map(f, ba, bb) and is_bounded_map(g, bb, bc):
            assert is_bounded_map(f.then(g), ba, bc)


def test_composite_image():
    a, b, c = FiniteUniverse.of_size(2, "x"), FiniteUniverse.of_size(2, "y"), FiniteUniverse.of_size(1, "z")
    f, g = MapSpec(a, b, (1, 0)), MapSpec.constant(b, c)
    assert f.then(g).image == (0, 0)
    with pytest.raises(ContractViolation):
        g.then(f)


# posets

def test_chain_poset_bornology():
    p = FinitePoset.chain(FiniteUniverse.of_size(5))
    fam = poset_bornology(p)
    assert fam.is_power_set() and check_bornology(fam)


def test_directed_poset_has_full_bornology():
    u = FiniteUniverse(("x", "y", "z", "top"))
    p = FinitePoset.from_labels(u, [("x", "top"), ("y", "top"), ("z", "top"), ("x", "y")])
    fam = poset_bornology(p)
    assert fam.is_power_set()
    # brute-force definition
    for m in range(16):
        assert any(all((a, x) in p.leq for a in range(4) if m >> a & 1) for x in range(4))


def test_antichain_not_directed():
    u = FiniteUniverse(("x", "y"))
    with pytest.raises(NotDirected) as info:
        poset_bornology(FinitePoset(u, frozenset()))
    assert info.value.witness == ("x", "y")


def test_poset_rejects_non_transitive_and_cycles():
    u = FiniteUniverse(("x", "y", "z"))
    with pytest.raises(ContractViolation):
        FinitePoset.from_labels(u, [("x", "y"), ("y", "z")])
    with pytest.raises(ContractViolation):
        FinitePoset.from_labels(u, [("x", "y"), ("y", "x")])


def test_random_directed_posets_bounded_by_top():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(1, 7))
        # random order compatible with index order, plus a top element
        pairs = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3}
        pairs |= {(i, n - 1) for i in range(n)}
        closed = set(pairs)
        for _ in range(n):
            closed |= {(i, k) for i, j in closed for j2, k in closed if j == j2}
        p = FinitePoset(FiniteUniverse.of_size(n), frozenset(closed))
        assert poset_bornology(p).is_power_set()


# metric balls

def test_metric_ball_bornology_degenerate():
    cloud = PointCloud([[0, 0], [3, 4], [10, 0]])
    bounded = metric_ball_bornology(cloud)
    assert all(bounded(m) for m in range(8))


def test_metric_ball_bornology_finite_cap():
    cloud = PointCloud([[0.0], [1.0], [3.0]])
    bounded = metric_ball_bornology(cloud, radius_cap=1.5)
    assert bounded(0b011) and not bounded(0b111)


def test_metric_ball_empty_cloud():
    with pytest.raises(EmptyCloud):
        metric_ball_bornology(PointCloud(np.zeros((0, 2)), []))
