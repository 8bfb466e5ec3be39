"""
Mahalanobis depth 1 / (1 + d^2) with the sample mean and covariance
"""
import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import InsufficientDataError, ValidationError
from app.core.linalg import checked_eigh, covariance, squared_mahalanobis
from app.depth.base import BaseDepth
from app.models.depth import DepthKind
from app.models.sample import as_points


class MahalanobisDepth(BaseDepth):
    """Exact and affine invariant in every dimension; needs n >= d + 1"""

    kind = DepthKind.MAHALANOBIS

    @staticmethod
    def location_scatter(points: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        n, d = points.shape
        if n < d + 1:
            raise InsufficientDataError(
                f"Mahalanobis depth needs at least d + 1 = {d + 1} points, got {n}"
            )
        return points.mean(axis=0), covariance(points)

    def _depth_internal(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        return float(self._depth_all_internal(x.reshape(1, -1), points)[0])

    def _depth_all_internal(
        self, queries: NDArray[np.float64], reference: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        location, scatter = self.location_scatter(reference)
        return 1.0 / (1.0 + squared_mahalanobis(queries, location, scatter))

    def region_bounds(
        self, reference: ArrayLike, level: float
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Bounding box of the ellipsoid d^2 <= 1/level - 1"""
        if not 0 < level <= 1:
            raise ValidationError(f"region level must lie in (0, 1], got {level}")
        location, scatter = self.location_scatter(as_points(reference))
        checked_eigh(scatter, what="sample covariance")
        radius_sq = 1.0 / level - 1.0
        half_width = np.sqrt(radius_sq * np.diag(scatter))
        return location - half_width, location + half_width
