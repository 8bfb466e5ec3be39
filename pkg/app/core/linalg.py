"""
Small dense linear algebra used across the package: sample covariance,
symmetric inverse square roots and affine images of samples.
"""
import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import (
    DimensionMismatchError,
    InsufficientDataError,
    SingularityError,
    ValidationError,
)
from app.models.sample import AffineMap, LabeledSample, as_points

EIGENVALUE_FLOOR = 1e-12
SYMMETRY_TOLERANCE = 1e-10


def apply_affine(affine: AffineMap, sample: LabeledSample) -> LabeledSample:
    """Replace every point x by A x + b; labels are unchanged"""
    if affine.d != sample.d:
        raise DimensionMismatchError(sample.d, affine.d, what="affine map")
    return LabeledSample(affine.apply_points(sample.points), sample.labels)


def covariance(points: ArrayLike) -> NDArray[np.float64]:
    """Sample covariance with divisor n - 1"""
    array = as_points(points)
    if array.shape[0] < 2:
        raise InsufficientDataError(
            f"covariance needs at least 2 points, got {array.shape[0]}"
        )
    centered = array - array.mean(axis=0)
    return centered.T @ centered / (array.shape[0] - 1)


def pooled_covariance(sample: LabeledSample) -> NDArray[np.float64]:
    """Covariance of all points of the sample, labels ignored"""
    return covariance(sample.points)


def within_class_covariance(sample: LabeledSample) -> NDArray[np.float64]:
    """Pooled within-class covariance, divisor n - 2 (the LDA scatter)"""
    if sample.n < 3:
        raise InsufficientDataError("within-class covariance needs at least 3 points")
    scatter = np.zeros((sample.d, sample.d))
    for label in (0, 1):
        group = sample.class_points(label)
        if group.shape[0] == 0:
            raise InsufficientDataError(f"class {label} is empty")
        centered = group - group.mean(axis=0)
        scatter += centered.T @ centered
    return scatter / (sample.n - 2)


def checked_eigh(matrix: ArrayLike, what: str = "matrix") -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix whose spectrum clears the floor"""
    sym = np.array(matrix, dtype=float)
    if sym.ndim != 2 or sym.shape[0] != sym.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {sym.shape}")
    if not np.allclose(sym, sym.T, atol=SYMMETRY_TOLERANCE, rtol=0.0):
        raise ValidationError(f"{what} is not symmetric")
    eigenvalues, eigenvectors = np.linalg.eigh((sym + sym.T) / 2)
    smallest = float(eigenvalues[0])
    scale = max(1.0, float(eigenvalues[-1]))
    if smallest <= EIGENVALUE_FLOOR * scale:
        raise SingularityError(f"{what} is singular", eigenvalue=smallest)
    return eigenvalues, eigenvectors


def inverse_sqrt(matrix: ArrayLike) -> NDArray[np.float64]:
    """Symmetric M with M @ matrix @ M = I"""
    eigenvalues, eigenvectors = checked_eigh(matrix, what="scatter matrix")
    return (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.T


def symmetric_sqrt(matrix: ArrayLike) -> NDArray[np.float64]:
    """Symmetric square root of an SPD matrix"""
    eigenvalues, eigenvectors = checked_eigh(matrix, what="scatter matrix")
    return (eigenvectors * np.sqrt(eigenvalues)) @ eigenvectors.T


def squared_mahalanobis(
    points: ArrayLike, location: ArrayLike, scatter: ArrayLike
) -> NDArray[np.float64]:
    """(x - mu)' scatter^{-1} (x - mu) for every row x"""
    array = as_points(points)
    eigenvalues, eigenvectors = checked_eigh(scatter, what="scatter matrix")
    rotated = (array - np.asarray(location, dtype=float)) @ eigenvectors
    return np.sum(rotated**2 / eigenvalues, axis=1)
