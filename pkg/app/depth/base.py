"""
Base class for sample depth functions D(x, P^(n))
"""
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import DimensionMismatchError
from app.core.logging_config import get_logger
from app.models.depth import DepthKind, DepthSpec
from app.models.sample import as_point, as_points


class BaseDepth(ABC):
    """Abstract base class for depth implementations"""

    kind: DepthKind

    def __init__(self, spec: DepthSpec):
        self.spec = spec
        self.logger = get_logger(f"app.depth.{self.kind.value}")

    @abstractmethod
    def _depth_internal(self, x: NDArray[np.float64], points: NDArray[np.float64]) -> float:
        """Depth of a single validated query point"""
        pass

    def _depth_all_internal(
        self, queries: NDArray[np.float64], reference: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        """Depth of every query row; subclasses vectorize where they can"""
        return np.array([self._depth_internal(q, reference) for q in queries], dtype=float)

    def depth(self, x: ArrayLike, points: ArrayLike) -> float:
        """Depth of x with respect to the empirical distribution of `points`"""
        reference = as_points(points)
        query = as_point(x)
        if query.size != reference.shape[1]:
            raise DimensionMismatchError(reference.shape[1], query.size, what="query point")
        return float(self._depth_internal(query, reference))

    def depth_all(self, queries: ArrayLike, reference: ArrayLike) -> NDArray[np.float64]:
        """Depth of each query row with respect to `reference`"""
        ref = as_points(reference)
        qs = as_points(queries)
        if qs.shape[1] != ref.shape[1]:
            raise DimensionMismatchError(ref.shape[1], qs.shape[1], what="query points")
        return self._depth_all_internal(qs, ref)

    def region_bounds(
        self, reference: ArrayLike, level: float
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        Axis-aligned box containing {y : D(y, reference) >= level} for level > 0.
        Default: the sample bounding box, valid whenever depth vanishes outside it.
        """
        ref = as_points(reference)
        return ref.min(axis=0), ref.max(axis=0)

    def get_depth_info(self) -> Dict[str, Any]:
        """Get information about the depth implementation"""
        return {
            "depth_type": self.__class__.__name__,
            "kind": self.kind.value,
            "directions": self.spec.directions,
            "max_enumeration": self.spec.max_enumeration,
        }
