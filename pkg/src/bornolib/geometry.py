"""Euclidean kernels for point clouds: diameter, minimum enclosing ball, cover optimisation.

The enclosing-ball radius and the diameter are the two classical total size
functions of a metric space; their monks are the Hausdorff and Kuratowski
measures of non-compactness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import FiniteUniverse, Mask, bits_of, min_max_partition
from .errors import BudgetZero, ContractViolation, TooManyPoints
from .sizes import SizeFunction, SizeTable, submask_max

#: Absolute tolerance used by optimality and relation assertions.
TOL = 1e-9

#: Largest subset handled by :func:`exact_cover_optimum`.
MAX_EXACT_POINTS = 14

SIZE_KINDS = ("alpha", "beta")


class PointCloud:
    """Finitely many points of ``R^d``, each carrying a label."""

    __slots__ = ("points", "labels", "universe")

    def __init__(self, points, labels: Sequence[str] | None = None):
        pts = np.array(points, dtype=float)
        if pts.ndim == 1 and pts.size == 0:
            pts = pts.reshape(0, 1)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ContractViolation("points must form an (m, d) array with d >= 1")
        if not np.isfinite(pts).all():
            raise ContractViolation("point coordinates must be finite")
        pts.flags.writeable = False
        self.points = pts
        if labels is None:
            labels = [f"p{i}" for i in range(len(pts))]
        if len(labels) != len(pts):
            raise ContractViolation("one label per point is required")
        self.labels = tuple(str(x) for x in labels)
        self.universe = FiniteUniverse(self.labels)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def full(self) -> int:
        return self.universe.full

    def indices(self, subset: Mask | None = None) -> list[int]:
        if subset is None:
            return list(range(self.m))
        return bits_of(self.universe.check(subset))

    def __repr__(self):
        return f"PointCloud(m={self.m}, dim={self.dim})"


def _pairwise(pts: np.ndarray) -> np.ndarray:
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def diameter(cloud: PointCloud, subset: Mask | None = None) -> float:
    """Largest pairwise distance; 0 for the empty set and singletons."""
    pts = cloud.points[cloud.indices(subset)]
    if len(pts) < 2:
        return 0.0
    return float(_pairwise(pts).max())


def _circumball(P: np.ndarray, support: list[int]):
    """Smallest ball having every support point on its boundary."""
    if not support:
        return np.zeros(P.shape[1]), -1.0
    base = P[support[0]]
    if len(support) == 1:
        return base.copy(), 0.0
    A = P[support[1:]] - base
    gram = A @ A.T
    lam = np.linalg.lstsq(gram, 0.5 * np.diag(gram), rcond=None)[0]
    center = base + lam @ A
    radius = float(np.sqrt(((P[support] - center) ** 2).sum(axis=1)).max())
    return center, radius


def _welzl(P: np.ndarray):
    m, d = P.shape
    span = float(np.abs(P).max()) if m else 0.0
    eps = 1e-10 * max(1.0, span)
    order = list(range(m))

    def mtf(end, support):
        center, radius = _circumball(P, support)
        if len(support) == d + 1:
            return center, radius
        for i in range(end):
            p = order[i]
            if np.sqrt(((P[p] - center) ** 2).sum()) > radius + eps:
                center, radius = mtf(i, support + [p])
                order.insert(0, order.pop(i))
        return center, radius

    center, _ = mtf(m, [])
    radius = float(np.sqrt(((P - center) ** 2).sum(axis=1)).max())
    return center, radius


def min_enclosing_ball(cloud: PointCloud, subset: Mask | None = None):
    """Smallest closed ball containing the subset, as ``(center, radius)``.

    Move-to-front Welzl recursion with supports of at most ``d + 1`` points.
    The empty set gets radius 0 centred at the origin.
    """
    pts = cloud.points[cloud.indices(subset)]
    if len(pts) == 0:
        return np.zeros(cloud.dim), 0.0
    if len(pts) == 1:
        return pts[0].copy(), 0.0
    return _welzl(pts)


def enclosing_radius(cloud: PointCloud, subset: Mask | None = None) -> float:
    return min_enclosing_ball(cloud, subset)[1]


@dataclass(frozen=True)
class MetricSize(SizeFunction):
    """A size function computed from a point cloud (``alpha`` or ``beta``)."""

    cloud: PointCloud = None
    kind: str = "alpha"

    def tabulate(self) -> SizeTable:
        """Values on every subset, monotone exactly.

        Enclosing radii computed along different support orders can differ in
        the last bits, so the table is lifted to its least monotone majorant;
        a lift larger than ``TOL`` means a kernel error and is raised.
        """
        raw = SizeTable.from_function(self.universe, self, self.name).values
        fixed = submask_max(raw, self.universe.n)
        drift = float((fixed - raw).max()) if len(raw) else 0.0
        if drift > TOL:
            raise ContractViolation(f"{self.name} table is not monotone (drift {drift:.3g})")
        return SizeTable(self.universe, fixed, self.name)


def alpha_size(cloud: PointCloud) -> MetricSize:
    """Radius of the smallest enclosing ball."""
    return MetricSize(lambda m: enclosing_radius(cloud, m), "alpha", cloud.universe,
                      cloud=cloud, kind="alpha")


def beta_size(cloud: PointCloud) -> MetricSize:
    """Diameter."""
    return MetricSize(lambda m: diameter(cloud, m), "beta", cloud.universe,
                      cloud=cloud, kind="beta")


def metric_size(cloud: PointCloud, kind: str) -> MetricSize:
    if kind == "alpha":
        return alpha_size(cloud)
    if kind == "beta":
        return beta_size(cloud)
    raise ContractViolation(f"unknown size kind {kind!r}; expected alpha or beta")


@dataclass(frozen=True)
class RelationReport:
    alpha: float
    beta: float
    two_alpha: float
    ok: bool

    @property
    def lower_margin(self) -> float:
        return self.beta - self.alpha

    @property
    def upper_margin(self) -> float:
        return self.two_alpha - self.beta


def size_relation_check(cloud: PointCloud, subset: Mask | None = None,
                        tol: float = TOL) -> RelationReport:
    """Check ``radius <= diameter <= 2 * radius`` on one subset."""
    a = enclosing_radius(cloud, subset)
    b = diameter(cloud, subset)
    return RelationReport(a, b, 2 * a, a <= b + tol and b <= 2 * a + tol)


@dataclass(frozen=True)
class FarthestFirst:
    centers: list[int]
    groups: list[int]
    radius: float


def farthest_first(cloud: PointCloud, subset: Mask | None, k: int) -> FarthestFirst:
    """Farthest-point-first traversal with ``k`` centres and nearest-centre groups.

    The lowest-index point seeds the traversal; ties in both the farthest
    point and the nearest centre go to the lowest index.  ``radius`` is the
    largest distance from a point to its centre.
    """
    if k < 1:
        raise BudgetZero("farthest-first traversal needs at least one centre")
    idx = cloud.indices(subset)
    if not idx:
        return FarthestFirst([], [], 0.0)
    D = _pairwise(cloud.points[idx])
    chosen = [0]
    nearest = D[0].copy()
    while len(chosen) < k:
        j = int(np.argmax(nearest))
        if nearest[j] == 0:
            break
        chosen.append(j)
        np.minimum(nearest, D[j], out=nearest)
    owner = np.argmin(D[chosen], axis=0)
    groups = [0] * len(chosen)
    for pos, c in enumerate(owner):
        groups[c] |= 1 << idx[pos]
    return FarthestFirst([idx[c] for c in chosen], groups, float(nearest.max()))


def traversal_order(cloud: PointCloud, subset: Mask | None) -> list[int]:
    """All subset points in farthest-point-first order."""
    idx = cloud.indices(subset)
    if not idx:
        return []
    D = _pairwise(cloud.points[idx])
    order = [0]
    nearest = D[0].copy()
    nearest[0] = -1.0
    for _ in range(len(idx) - 1):
        j = int(np.argmax(nearest))
        order.append(j)
        np.minimum(nearest, D[j], out=nearest)
        nearest[order] = -1.0
    return [idx[j] for j in order]


def exact_cover_optimum(cloud: PointCloud, subset: Mask | None, k: int, size_kind: str) -> float:
    """Smallest achievable largest-block size over partitions into at most ``k`` blocks.

    Exhaustive over restricted growth strings with branch and bound, seeded by
    the farthest-first grouping.
    """
    if k < 1:
        raise BudgetZero("need at least one block")
    idx = cloud.indices(subset)
    if len(idx) > MAX_EXACT_POINTS:
        raise TooManyPoints(f"{len(idx)} points exceed the exact limit {MAX_EXACT_POINTS}")
    if len(idx) <= k:
        return 0.0
    size = metric_size(cloud, size_kind)
    seed = farthest_first(cloud, subset, k)
    upper = max(size(g) for g in seed.groups)
    value, _ = min_max_partition(traversal_order(cloud, subset), k, size.evaluator,
                                 upper=upper, upper_blocks=seed.groups)
    return value
