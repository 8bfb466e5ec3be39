"""
Tukey halfspace depth: the smallest fraction of sample points in a closed
halfspace whose boundary passes through x.
"""
import numpy as np
from numpy.typing import NDArray

from app.depth.angular import forward_arc_counts, sorted_angles, split_vectors
from app.depth.base import BaseDepth
from app.depth.directions import scan_directions
from app.models.depth import DepthKind

PROJECTION_TOLERANCE = 1e-12


def halfspace_count_1d(x: float, values: NDArray[np.float64]) -> int:
    return int(min(np.count_nonzero(values >= x), np.count_nonzero(values <= x)))


def halfspace_count_2d(x: NDArray[np.float64], points: NDArray[np.float64]) -> int:
    """
    Exact count by angular sweep. The points left out by the best closed
    halfplane are exactly those in an open semicircle of directions, so
    depth count = n - (largest number of vectors in an open semicircle).
    Points equal to x sit in every halfplane.
    """
    vectors, _ = split_vectors(x, points)
    if vectors.shape[0] == 0:
        return int(points.shape[0])
    excluded = int(forward_arc_counts(sorted_angles(vectors)).max())
    return int(points.shape[0]) - excluded


def halfspace_count_approx(
    x: NDArray[np.float64], points: NDArray[np.float64], directions: NDArray[np.float64]
) -> int:
    """
    Minimum over the given directions plus the normalized X_i - x. This is an
    upper bound on the exact count.
    """
    vectors = points - x
    norms = np.linalg.norm(vectors, axis=1)
    scale = max(1.0, float(norms.max()))
    data_directions = vectors[norms > 0] / norms[norms > 0, None]
    candidates = np.vstack([directions, data_directions])
    contained = (vectors @ candidates.T) >= -PROJECTION_TOLERANCE * scale
    return int(contained.sum(axis=0).min())


class HalfspaceDepth(BaseDepth):
    """Exact for d <= 2, direction-approximated (upper bound) for d >= 3"""

    kind = DepthKind.HALFSPACE

    def _count(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> int:
        d = points.shape[1]
        if d == 1:
            return halfspace_count_1d(float(x[0]), points[:, 0])
        if d == 2:
            return halfspace_count_2d(x, points)
        directions = scan_directions(d, self.spec.directions, signed_axes=True)
        return halfspace_count_approx(x, points, directions)

    def _depth_internal(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        return self._count(x, points) / points.shape[0]

    def _depth_all_internal(
        self, queries: NDArray[np.float64], reference: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        if reference.shape[1] == 1:
            values = np.sort(reference[:, 0])
            q = queries[:, 0]
            at_most = np.searchsorted(values, q, side="right")
            at_least = values.size - np.searchsorted(values, q, side="left")
            return np.minimum(at_most, at_least) / values.size
        return super()._depth_all_internal(queries, reference)
