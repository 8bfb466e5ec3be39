"""
Point clouds, labeled training samples and affine maps.

Arrays are copied on construction and marked read-only, so values can be
shared freely between workers.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import DimensionMismatchError, ValidationError

Point = NDArray[np.float64]
PointsLike = Union[ArrayLike, Sequence[Sequence[float]]]

AFFINE_DET_TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def as_points(points: PointsLike, dim: Optional[int] = None) -> NDArray[np.float64]:
    """Coerce to a finite (n, d) float array; 1-D input is read as n points in R^1"""
    array = np.array(points, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise ValidationError(f"points must be a 2-D array, got shape {array.shape}")
    if array.shape[0] == 0:
        raise ValidationError("point set is empty")
    if array.shape[1] < 1:
        raise ValidationError("points must have dimension d >= 1")
    if not np.all(np.isfinite(array)):
        raise ValidationError("points contain non-finite coordinates")
    if dim is not None and array.shape[1] != dim:
        raise DimensionMismatchError(dim, array.shape[1], what="point set")
    return array


def as_point(x: ArrayLike, dim: Optional[int] = None) -> Point:
    """Coerce a single query point to a finite 1-D float array"""
    point = np.array(x, dtype=float).reshape(-1)
    if point.size < 1:
        raise ValidationError("query point is empty")
    if not np.all(np.isfinite(point)):
        raise ValidationError("query point has non-finite coordinates")
    if dim is not None and point.size != dim:
        raise DimensionMismatchError(dim, point.size, what="query point")
    return point


@dataclass(frozen=True, eq=False)
class LabeledSample:
    """n points in R^d with binary labels"""

    points: NDArray[np.float64]
    labels: NDArray[np.int64]

    def __post_init__(self):
        points = as_points(self.points)
        labels = np.array(self.labels).reshape(-1)
        if labels.shape[0] != points.shape[0]:
            raise ValidationError(
                f"{points.shape[0]} points but {labels.shape[0]} labels"
            )
        if not np.all(np.isin(labels, (0, 1))):
            raise ValidationError("labels must be 0 or 1")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "labels", _frozen(labels.astype(np.int64)))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    def class_points(self, label: int) -> NDArray[np.float64]:
        return self.points[self.labels == label]

    def class_counts(self) -> tuple[int, int]:
        n1 = int(self.labels.sum())
        return self.n - n1, n1

    def has_both_classes(self) -> bool:
        n0, n1 = self.class_counts()
        return n0 > 0 and n1 > 0

    def subset(self, indices: ArrayLike) -> "LabeledSample":
        idx = np.asarray(indices, dtype=np.int64)
        return LabeledSample(self.points[idx], self.labels[idx])

    def without(self, index: int) -> "LabeledSample":
        keep = np.ones(self.n, dtype=bool)
        keep[index] = False
        return LabeledSample(self.points[keep], self.labels[keep])

    def relabeled(self) -> "LabeledSample":
        """Same points with labels 0 and 1 swapped"""
        return LabeledSample(self.points, 1 - self.labels)

    def with_points(self, points: PointsLike) -> "LabeledSample":
        return LabeledSample(as_points(points, self.d), self.labels)


@dataclass(frozen=True, eq=False)
class RegressionSample:
    """n points in R^d with real responses"""

    points: NDArray[np.float64]
    responses: NDArray[np.float64]

    def __post_init__(self):
        points = as_points(self.points)
        responses = np.array(self.responses, dtype=float).reshape(-1)
        if responses.shape[0] != points.shape[0]:
            raise ValidationError(
                f"{points.shape[0]} points but {responses.shape[0]} responses"
            )
        if not np.all(np.isfinite(responses)):
            raise ValidationError("responses must be finite")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "responses", _frozen(responses))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True, eq=False)
class AffineMap:
    """x -> matrix @ x + shift with an invertible matrix"""

    matrix: NDArray[np.float64]
    shift: NDArray[np.float64]

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        shift = np.array(self.shift, dtype=float).reshape(-1)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"affine matrix must be square, got shape {matrix.shape}")
        if shift.shape[0] != matrix.shape[0]:
            raise DimensionMismatchError(matrix.shape[0], shift.shape[0], what="shift vector")
        if abs(np.linalg.det(matrix)) <= AFFINE_DET_TOLERANCE:
            raise ValidationError("affine matrix is not invertible")
        object.__setattr__(self, "matrix", _frozen(matrix))
        object.__setattr__(self, "shift", _frozen(shift))

    @property
    def d(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(np.eye(d), np.zeros(d))

    def apply_points(self, points: PointsLike) -> NDArray[np.float64]:
        array = as_points(points, self.d)
        return array @ self.matrix.T + self.shift

    def apply_point(self, x: ArrayLike) -> Point:
        return self.matrix @ as_point(x, self.d) + self.shift

    def inverse(self) -> "AffineMap":
        inv = np.linalg.inv(self.matrix)
        return AffineMap(inv, -inv @ self.shift)
