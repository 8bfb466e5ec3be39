"""
Simplicial depth: the fraction of closed simplices spanned by d + 1 sample
points that contain x.
"""
import itertools
import math

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import nnls

from app.core.rng import RngSeed
from app.depth.angular import forward_arc_counts, sorted_angles, split_vectors
from app.depth.base import BaseDepth
from app.models.depth import DepthKind

BARYCENTRIC_TOLERANCE = 1e-10
ENUMERATION_CHUNK = 20_000


def _pairs(k: NDArray[np.int64]) -> NDArray[np.int64]:
    return k * (k - 1) // 2


def simplicial_count_1d(x: float, values: NDArray[np.float64]) -> tuple[int, int]:
    """(segments containing x, all segments)"""
    n = values.size
    left = np.count_nonzero(values < x)
    right = np.count_nonzero(values > x)
    total = n * (n - 1) // 2
    missing = left * (left - 1) // 2 + right * (right - 1) // 2
    return int(total - missing), int(total)


def simplicial_count_2d(x: NDArray[np.float64], points: NDArray[np.float64]) -> tuple[int, int]:
    """
    (triangles containing x, all triangles). A closed triangle misses x iff
    its vertices lie in an open half-plane through x, i.e. in an open
    semicircle of directions; each such triple is counted once, from its
    first vertex in counterclockwise order.
    """
    n = points.shape[0]
    total = math.comb(n, 3)
    vectors, _ = split_vectors(x, points)
    following = forward_arc_counts(sorted_angles(vectors)) - 1
    missing = int(_pairs(following).sum())
    return total - missing, total


def simplex_contains(vertices: NDArray[np.float64], x: NDArray[np.float64]) -> bool:
    """Closed-simplex membership, tolerant to degenerate (flat) simplices"""
    d = x.size
    system = np.vstack([vertices.T, np.ones(d + 1)])
    target = np.append(x, 1.0)
    if abs(np.linalg.det(system)) > BARYCENTRIC_TOLERANCE:
        weights = np.linalg.solve(system, target)
        return bool(np.all(weights >= -BARYCENTRIC_TOLERANCE))
    weights, residual = nnls(system, target)
    return bool(residual <= BARYCENTRIC_TOLERANCE * max(1.0, float(np.abs(target).max())))


def _contains_batch(simplices: NDArray[np.float64], x: NDArray[np.float64]) -> NDArray[np.bool_]:
    """Membership for a stack of simplices with shape (batch, d + 1, d)"""
    batch, vertices, d = simplices.shape
    systems = np.concatenate(
        [np.transpose(simplices, (0, 2, 1)), np.ones((batch, 1, vertices))], axis=1
    )
    target = np.append(x, 1.0)
    dets = np.linalg.det(systems)
    regular = np.abs(dets) > BARYCENTRIC_TOLERANCE
    inside = np.zeros(batch, dtype=bool)
    if regular.any():
        weights = np.linalg.solve(systems[regular], np.broadcast_to(target, (regular.sum(), d + 1))[..., None])
        inside[regular] = np.all(weights[..., 0] >= -BARYCENTRIC_TOLERANCE, axis=1)
    for index in np.flatnonzero(~regular):
        inside[index] = simplex_contains(simplices[index], x)
    return inside


class SimplicialDepth(BaseDepth):
    """
    Exact angular counting for d <= 2. For d >= 3: exact enumeration when
    C(n, d+1) <= max_enumeration, otherwise Monte Carlo over max_enumeration
    uniformly drawn vertex subsets from the DepthSpec seed stream.
    """

    kind = DepthKind.SIMPLICIAL

    def _depth_internal(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        n, d = points.shape
        if n < d + 1:
            return 0.0
        if d == 1:
            inside, total = simplicial_count_1d(float(x[0]), points[:, 0])
            return inside / total
        if d == 2:
            inside, total = simplicial_count_2d(x, points)
            return inside / total
        if math.comb(n, d + 1) <= self.spec.max_enumeration:
            return self._enumerate(x, points)
        return self._monte_carlo(x, points)

    def _enumerate(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        n, d = points.shape
        subsets = itertools.combinations(range(n), d + 1)
        inside = 0
        total = 0
        while True:
            chunk = np.array(list(itertools.islice(subsets, ENUMERATION_CHUNK)), dtype=np.int64)
            if chunk.size == 0:
                break
            inside += int(_contains_batch(points[chunk], x).sum())
            total += chunk.shape[0]
        return inside / total

    def _monte_carlo(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        n, d = points.shape
        rng = RngSeed(self.spec.seed).child("simplicial", n, d).generator()
        draws = self.spec.max_enumeration
        subsets = np.empty((0, d + 1), dtype=np.int64)
        while subsets.shape[0] < draws:
            candidate = rng.integers(0, n, size=(draws, d + 1))
            ordered = np.sort(candidate, axis=1)
            distinct = np.all(np.diff(ordered, axis=1) > 0, axis=1)
            subsets = np.vstack([subsets, candidate[distinct]])
        subsets = subsets[:draws]
        inside = 0
        for start in range(0, draws, ENUMERATION_CHUNK):
            chunk = subsets[start : start + ENUMERATION_CHUNK]
            inside += int(_contains_batch(points[chunk], x).sum())
        self.logger.debug(f"Monte Carlo simplicial depth over {draws} simplices (n={n}, d={d})")
        return inside / draws
