"""
Angular sweep shared by the exact bivariate halfspace and simplicial depths.

Both depths only need, for every nonzero vector v_i = X_i - x, the number of
vectors lying in the half-open arc [theta_i, theta_i + pi) counterclockwise
from it. Angles closer than ANGLE_TOLERANCE to pi apart are treated as exactly
opposite (hence never inside one open half-plane), which keeps reflected
pairs 2x - X_i exact under floating point.
"""
import numpy as np
from numpy.typing import NDArray

ANGLE_TOLERANCE = 1e-10
ZERO_TOLERANCE = 1e-14


def split_vectors(
    x: NDArray[np.float64], points: NDArray[np.float64]
) -> tuple[NDArray[np.float64], int]:
    """Vectors X_i - x with the ones coincident with x removed, and how many were"""
    vectors = points - x
    scale = max(1.0, float(np.max(np.abs(points))), float(np.max(np.abs(x))))
    zero = np.max(np.abs(vectors), axis=1) <= ZERO_TOLERANCE * scale
    return vectors[~zero], int(zero.sum())


def sorted_angles(vectors: NDArray[np.float64]) -> NDArray[np.float64]:
    angles = np.mod(np.arctan2(vectors[:, 1], vectors[:, 0]), 2 * np.pi)
    return np.sort(angles)


def forward_arc_counts(angles: NDArray[np.float64]) -> NDArray[np.int64]:
    """
    For sorted angles, count_i = #{positions p >= i in cyclic order with
    angle in [theta_i, theta_i + pi)}, the point itself included.
    """
    m = angles.size
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    doubled = np.concatenate([angles, angles + 2 * np.pi])
    ends = np.searchsorted(doubled, angles + np.pi - ANGLE_TOLERANCE, side="left")
    return np.minimum(ends - np.arange(m), m).astype(np.int64)
