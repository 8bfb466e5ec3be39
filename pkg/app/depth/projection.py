"""
Projection depth 1 / (1 + sup_u |u'x - med(u'X)| / MAD(u'X)), median and
unscaled MAD as the univariate location and scale.
"""
import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import DegenerateScaleError, InsufficientDataError, ValidationError
from app.depth.base import BaseDepth
from app.depth.directions import half_circle_directions, scan_directions
from app.models.depth import DepthKind
from app.models.sample import as_points


class ProjectionDepth(BaseDepth):
    """
    Exact for d = 1. For d = 2 the supremum runs over evenly spread angles,
    for d >= 3 over quasi-random directions; the coordinate axes are always
    included.
    """

    kind = DepthKind.PROJECTION

    def directions_for(self, d: int) -> NDArray[np.float64]:
        if d == 1:
            return np.ones((1, 1))
        if d == 2:
            return np.vstack([half_circle_directions(self.spec.directions), np.eye(2)])
        return scan_directions(d, self.spec.directions, signed_axes=False)

    def _median_mad(
        self, reference: NDArray[np.float64], directions: NDArray[np.float64]
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        if reference.shape[0] < 2:
            raise InsufficientDataError("projection depth needs at least 2 points")
        projected = reference @ directions.T
        median = np.median(projected, axis=0)
        mad = np.median(np.abs(projected - median), axis=0)
        scale = max(1.0, float(np.abs(projected).max()))
        degenerate = mad <= 1e-12 * scale
        if degenerate.any():
            worst = directions[int(np.argmax(degenerate))]
            raise DegenerateScaleError(
                f"zero MAD along direction {np.round(worst, 6).tolist()}"
            )
        return median, mad

    def _depth_internal(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        return float(self._depth_all_internal(x.reshape(1, -1), points)[0])

    def _depth_all_internal(
        self, queries: NDArray[np.float64], reference: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        directions = self.directions_for(reference.shape[1])
        median, mad = self._median_mad(reference, directions)
        outlyingness = np.max(np.abs(queries @ directions.T - median) / mad, axis=1)
        return 1.0 / (1.0 + outlyingness)

    def region_bounds(
        self, reference: ArrayLike, level: float
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Box from the axis directions: |y_i - med_i| <= (1/level - 1) MAD_i"""
        if not 0 < level <= 1:
            raise ValidationError(f"region level must lie in (0, 1], got {level}")
        ref = as_points(reference)
        median, mad = self._median_mad(ref, np.eye(ref.shape[1]))
        reach = (1.0 / level - 1.0) * mad
        return median - reach, median + reach
