"""Slow, independent reference computations used to cross-check the fast kernels.

Nothing here shares code with :mod:`bornolib.geometry` or the branch-and-bound
partition search.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .core import INF, restricted_growth_strings


def _max_dist(P: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = ((centers[:, None, :] - P[None, :, :]) ** 2).sum(axis=-1)
    return np.sqrt(d2.max(axis=1))


def _golden_min(fn: Callable[[float], float], lo: float, hi: float, iters: int = 60) -> float:
    """Minimum of a convex function on ``[lo, hi]`` by golden-section search."""
    ratio = (np.sqrt(5.0) - 1) / 2
    a, b = lo + (1 - ratio) * (hi - lo), lo + ratio * (hi - lo)
    fa, fb = fn(a), fn(b)
    for _ in range(iters):
        if fa <= fb:
            hi, b, fb = b, a, fa
            a = lo + (1 - ratio) * (hi - lo)
            fa = fn(a)
        else:
            lo, a, fa = a, b, fb
            b = lo + ratio * (hi - lo)
            fb = fn(b)
    return min(fa, fb, fn(lo), fn(hi))


def _exact_last_axis(offset: np.ndarray, z: np.ndarray) -> float:
    """``min over t of max_i sqrt(offset_i + (t - z_i)^2)``, exactly.

    Squared, the terms are parabolas of equal curvature, so the minimum of
    their upper envelope is at a vertex ``t = z_i`` or where two cross.
    """
    b = offset + z * z
    dz = z[None, :] - z[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = (b[None, :] - b[:, None]) / (2 * dz)
    cands = np.concatenate([z, cross[np.isfinite(cross)]])
    env = (cands[:, None] ** 2 - 2 * cands[:, None] * z[None, :] + b[None, :]).max(axis=1)
    return float(np.sqrt(max(env.min(), 0.0)))


def ternary_meb_radius(points, iters: int = 48) -> float:
    """Enclosing-ball radius by nested golden-section (ternary) search.

    Partial minimisation of a jointly convex function stays convex, so each
    leading coordinate is searched over the bounding box and the last
    coordinate is solved exactly.
    """
    P = np.asarray(points, dtype=float)
    if len(P) <= 1:
        return 0.0
    d = P.shape[1]

    def level(prefix: list, k: int) -> float:
        if k == d - 1:
            offset = ((P[:, :k] - np.array(prefix)) ** 2).sum(axis=1) if k else np.zeros(len(P))
            return _exact_last_axis(offset, P[:, k])
        lo, hi = float(P[:, k].min()), float(P[:, k].max())
        if lo == hi:
            return level(prefix + [lo], k + 1)
        return _golden_min(lambda x: level(prefix + [x], k + 1), lo, hi, iters)

    return level([], 0)


def support_meb_radius(points, tol: float = 1e-9) -> float:
    """Enclosing-ball radius by enumerating every support set of at most ``d + 1`` points.

    For each affinely independent support, the circumcentre within its affine
    hull is found by a direct linear solve; the smallest such ball containing
    all points is the answer.
    """
    P = np.asarray(points, dtype=float)
    m, d = P.shape
    if m <= 1:
        return 0.0
    best = INF
    for size in range(2, min(d + 1, m) + 1):
        for support in combinations(range(m), size):
            S = P[list(support)]
            base = S[0]
            U = S[1:] - base
            gram = U @ U.T
            if abs(np.linalg.det(gram)) < 1e-14 * max(1.0, float(np.abs(gram).max())) ** len(U):
                continue
            coef = np.linalg.solve(gram, 0.5 * (U * U).sum(axis=1))
            c = base + coef @ U
            r = float(np.sqrt(((S - c) ** 2).sum(axis=1)).max())
            if r < best and (np.sqrt(((P - c) ** 2).sum(axis=1)) <= r + tol).all():
                best = r
    return best


def brute_pair_diameter(points) -> float:
    P = np.asarray(points, dtype=float)
    best = 0.0
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            best = max(best, float(np.sqrt(((P[i] - P[j]) ** 2).sum())))
    return best


def brute_partition_optimum(items: Sequence[int], k: int, size: Callable[[int], float]) -> float:
    """Min over every restricted growth string of the largest block size (no pruning)."""
    if not items:
        return 0.0
    best = INF
    for rgs in restricted_growth_strings(len(items), k):
        blocks = [0] * (max(rgs) + 1)
        for item, b in zip(items, rgs):
            blocks[b] |= 1 << item
        best = min(best, max(size(b) for b in blocks))
    return best
