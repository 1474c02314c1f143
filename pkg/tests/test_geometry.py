import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bornolib import (BudgetZero, ContractViolation, PointCloud, TooManyPoints, alpha_size,
                      beta_size, diameter, exact_cover_optimum, farthest_first,
                      min_enclosing_ball, size_relation_check)
from bornolib.geometry import TOL, traversal_order
from bornolib.oracles import (brute_pair_diameter, brute_partition_optimum, support_meb_radius,
                              ternary_meb_radius)

SQRT2 = math.sqrt(2.0)


def _random_cloud(rng, m_max=12, dims=(1, 2, 3)):
    m = int(rng.integers(1, m_max + 1))
    d = int(rng.choice(dims))
    scale = float(rng.choice([0.1, 1.0, 10.0]))
    return PointCloud(rng.normal(scale=scale, size=(m, d)))


# point clouds

def test_cloud_validation():
    with pytest.raises(ContractViolation):
        PointCloud([[0.0, float("nan")]])
    with pytest.raises(ContractViolation):
        PointCloud([[0.0], [1.0]], labels=["a"])
    assert PointCloud([1.0, 2.0]).dim == 1


def test_cloud_default_labels(square):
    assert square.labels == ("p0", "p1", "p2", "p3")
    assert square.indices(square.universe.subset("p1", "p3")) == [1, 3]


# diameter

def test_diameter_examples(square):
    assert diameter(square, square.universe.subset("p2")) == 0
    assert diameter(square, 0) == 0
    assert diameter(square) == pytest.approx(1.4142135623730951, abs=1e-15)
    assert diameter(PointCloud([[0.0], [1.0], [2.0]])) == 2


def test_diameter_matches_pair_scan():
    rng = np.random.default_rng(1)
    for _ in range(50):
        cloud = _random_cloud(rng, dims=(1, 2, 3, 5))
        assert diameter(cloud) == pytest.approx(brute_pair_diameter(cloud.points), abs=1e-12)


# enclosing balls

def test_two_point_ball():
    cloud = PointCloud([[1.0, 2.0], [3.0, 2.0]])
    center, radius = min_enclosing_ball(cloud)
    assert np.allclose(center, [2.0, 2.0]) and radius == pytest.approx(1.0)


def test_square_ball(square):
    center, radius = min_enclosing_ball(square)
    assert np.allclose(center, [0.5, 0.5], atol=1e-12)
    assert abs(radius - 0.7071067811865476) <= 1e-9


def test_triangle_ball(triangle):
    assert abs(min_enclosing_ball(triangle)[1] - 0.5773502691896258) <= 1e-9
    assert abs(ternary_meb_radius(triangle.points) - 1 / math.sqrt(3)) <= 1e-9


def test_degenerate_balls(square):
    center, radius = min_enclosing_ball(square, 0)
    assert radius == 0 and not center.any()
    center, radius = min_enclosing_ball(square, square.universe.subset("p2"))
    assert radius == 0 and np.array_equal(center, [1.0, 1.0])


def test_ball_on_duplicates_and_collinear():
    assert min_enclosing_ball(PointCloud([[1.0, 1.0]] * 4))[1] == 0
    line = PointCloud([[0, 0], [1, 1], [2, 2], [3, 3]])
    assert min_enclosing_ball(line)[1] == pytest.approx(1.5 * SQRT2, abs=1e-12)


def test_ball_matches_oracles():
    rng = np.random.default_rng(2)
    for _ in range(60):
        cloud = _random_cloud(rng)
        center, radius = min_enclosing_ball(cloud)
        dist = np.sqrt(((cloud.points - center) ** 2).sum(axis=1))
        assert (dist <= radius + TOL).all()
        assert abs(radius - ternary_meb_radius(cloud.points)) <= 1e-6
        assert abs(radius - support_meb_radius(cloud.points)) <= 1e-9


def test_ball_high_dimension():
    rng = np.random.default_rng(3)
    for _ in range(10):
        cloud = PointCloud(rng.normal(size=(8, 6)))
        radius = min_enclosing_ball(cloud)[1]
        assert abs(radius - support_meb_radius(cloud.points)) <= 1e-9


def test_oracles_agree_on_known_values(square, triangle):
    assert ternary_meb_radius(square.points) == pytest.approx(SQRT2 / 2, abs=1e-9)
    assert support_meb_radius(square.points) == pytest.approx(SQRT2 / 2, abs=1e-12)
    assert support_meb_radius(triangle.points) == pytest.approx(1 / math.sqrt(3), abs=1e-12)


# relations

def test_relation_examples(square, triangle):
    rep = size_relation_check(square)
    assert rep.ok and rep.beta == pytest.approx(rep.two_alpha, abs=1e-12)
    rep = size_relation_check(PointCloud([[0.0], [1.0]]))
    assert (rep.alpha, rep.beta, rep.ok) == (0.5, 1.0, True)
    rep = size_relation_check(triangle)
    assert rep.ok and rep.beta == pytest.approx(1.0)
    assert rep.upper_margin == pytest.approx(2 / math.sqrt(3) - 1)
    assert rep.lower_margin > 0


def test_relation_chain_random_subsets():
    rng = np.random.default_rng(4)
    for _ in range(300):
        cloud = _random_cloud(rng, dims=(1, 2, 3, 5))
        subset = int(rng.integers(0, cloud.full + 1))
        assert size_relation_check(cloud, subset).ok


# exact covers

def test_cover_examples(square):
    assert exact_cover_optimum(square, None, 4, "alpha") == 0
    assert exact_cover_optimum(square, None, 2, "beta") == 1.0
    assert exact_cover_optimum(square, None, 2, "alpha") == pytest.approx(0.5, abs=1e-12)


def test_cover_errors(square):
    with pytest.raises(BudgetZero):
        exact_cover_optimum(square, None, 0, "beta")
    with pytest.raises(TooManyPoints):
        exact_cover_optimum(PointCloud(np.arange(15.0)), None, 2, "beta")
    with pytest.raises(ContractViolation):
        exact_cover_optimum(square, None, 1, "gamma")


def test_cover_matches_unpruned_search():
    rng = np.random.default_rng(5)
    for _ in range(25):
        cloud = _random_cloud(rng, m_max=7)
        for kind, size in (("alpha", alpha_size(cloud)), ("beta", beta_size(cloud))):
            for k in (1, 2, 3):
                expect = brute_partition_optimum(list(range(cloud.m)), k, size)
                assert exact_cover_optimum(cloud, None, k, kind) == pytest.approx(expect, abs=1e-12)


def test_cover_nonincreasing_and_zero_at_m():
    rng = np.random.default_rng(6)
    for _ in range(20):
        cloud = _random_cloud(rng, m_max=9)
        for kind in ("alpha", "beta"):
            vals = [exact_cover_optimum(cloud, None, k, kind) for k in range(1, cloud.m + 1)]
            assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))
            assert vals[-1] == 0


def test_cover_shadow_of_relations():
    rng = np.random.default_rng(7)
    for _ in range(40):
        cloud = _random_cloud(rng, m_max=9)
        for k in (1, 2, 3):
            a = exact_cover_optimum(cloud, None, k, "alpha")
            b = exact_cover_optimum(cloud, None, k, "beta")
            assert a <= b + TOL and b <= 2 * a + TOL


def test_cover_on_fourteen_points():
    rng = np.random.default_rng(8)
    cloud = PointCloud(rng.random((14, 2)))
    value = exact_cover_optimum(cloud, None, 3, "beta")
    approx = max(diameter(cloud, g) for g in farthest_first(cloud, None, 3).groups)
    assert value <= approx <= 2 * value + TOL


# farthest-first

def test_farthest_first_deterministic(square):
    ff = farthest_first(square, None, 2)
    # p1 and p3 are equidistant from both centres and go to the lower one
    assert ff.centers == [0, 2]
    assert ff.groups == [0b1011, 0b0100]
    assert ff.radius == 1.0


def test_farthest_first_stops_on_duplicates():
    cloud = PointCloud([[0.0], [0.0], [1.0]])
    ff = farthest_first(cloud, None, 3)
    assert ff.centers == [0, 2] and ff.radius == 0


def test_farthest_first_radius_two_approx():
    """The traversal radius is at most twice the optimal k-centre radius."""
    rng = np.random.default_rng(9)
    for _ in range(30):
        cloud = _random_cloud(rng, m_max=8)
        for k in (1, 2, 3):
            ff = farthest_first(cloud, None, k)
            # optimum over centres at cloud points, by brute force over centre sets
            D = np.sqrt(((cloud.points[:, None] - cloud.points[None]) ** 2).sum(-1))
            best = min(D[list(c)].min(axis=0).max() for c in combinations(range(cloud.m), min(k, cloud.m)))
            assert ff.radius <= 2 * best + TOL


def test_traversal_order_is_permutation():
    rng = np.random.default_rng(10)
    cloud = _random_cloud(rng)
    order = traversal_order(cloud, None)
    assert sorted(order) == list(range(cloud.m)) and order[0] == 0
    assert traversal_order(cloud, 0) == []


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=1, max_size=9))
def test_collinear_farthest_first_within_factor_two(xs):
    cloud = PointCloud(np.array(xs)[:, None])
    exact = exact_cover_optimum(cloud, None, 2, "beta")
    approx = max(diameter(cloud, g) for g in farthest_first(cloud, None, 2).groups)
    assert exact <= approx + TOL <= 2 * exact + 2 * TOL


@pytest.mark.parametrize("m,k", [(3, 2), (4, 2), (6, 3)])
def test_collinear_fixtures_optimal(m, k):
    cloud = PointCloud(np.arange(float(m))[:, None])
    groups = farthest_first(cloud, None, k).groups
    approx = max(diameter(cloud, g) for g in groups)
    assert approx == exact_cover_optimum(cloud, None, k, "beta") == 1.0
