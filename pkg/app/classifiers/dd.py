"""
DD-classifiers: separate the DD-plot (D_0(X_i), D_1(X_i)) with a polynomial
r(d) = c_1 d + ... + c_m d^m through the origin. A point is given label 1
iff D_1 > r(D_0).

The training objective counts Y_i = 1 with r(D_0) - D_1 > 0 and Y_i = 0 with
r(D_0) - D_1 < 0 as errors; points on the curve count for neither class.
"""
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import minimize
from scipy.special import expit

from app.classifiers.base_classifier import BaseClassifier
from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.rng import RngSeed
from app.depth.factory import get_depth
from app.models.classification import DDModel, DDPoint
from app.models.depth import DepthSpec
from app.models.sample import LabeledSample, as_points
from app.observability.decorators import log_duration

CURVE_TOLERANCE = 1e-12
INTERPOLATION_TOLERANCE = 1e-12
EVALUATION_BLOCK = 4_000_000  # candidates x points per vectorized error count


def dd_coordinates(
    points: ArrayLike, training: LabeledSample, spec: Optional[DepthSpec] = None
) -> NDArray[np.float64]:
    """(m, 2) array of depths of each row w.r.t. the class-0 and class-1 training points"""
    if not training.has_both_classes():
        raise ValidationError("DD-plot needs training points from both classes")
    depth = get_depth(spec)
    queries = as_points(points, training.d)
    return np.column_stack(
        [depth.depth_all(queries, training.class_points(label)) for label in (0, 1)]
    )


def dd_points(training: LabeledSample, spec: Optional[DepthSpec] = None) -> list[DDPoint]:
    """DD-plot of the training sample itself (no symmetrization)"""
    coords = dd_coordinates(training.points, training, spec)
    return [DDPoint(d0=float(a), d1=float(b)) for a, b in coords]


def _powers(d0: NDArray[np.float64], degree: int) -> NDArray[np.float64]:
    return np.power.outer(d0, np.arange(1, degree + 1))


def count_errors(
    coefficients: NDArray[np.float64], dd: NDArray[np.float64], labels: NDArray[np.int64]
) -> NDArray[np.int64]:
    """Training errors for each row of `coefficients` (shape (c, m))"""
    coeffs = np.atleast_2d(coefficients)
    basis = _powers(dd[:, 0], coeffs.shape[1])
    positive = labels == 1
    errors = np.empty(coeffs.shape[0], dtype=np.int64)
    block = max(1, EVALUATION_BLOCK // max(1, dd.shape[0]))
    for start in range(0, coeffs.shape[0], block):
        gap = coeffs[start : start + block] @ basis.T - dd[:, 1]
        wrong = np.where(positive, gap > CURVE_TOLERANCE, gap < -CURVE_TOLERANCE)
        errors[start : start + block] = wrong.sum(axis=1)
    return errors


def _candidate_subsets(n: int, degree: int, cap: int, rng_seed: RngSeed) -> NDArray[np.int64]:
    """All m-subsets in lexicographic order, or a sorted uniform subsample of `cap` of them"""
    if degree == 1:
        subsets = np.arange(n).reshape(-1, 1)
    else:
        subsets = np.column_stack(np.triu_indices(n, k=1))
    if subsets.shape[0] > cap:
        chosen = rng_seed.generator().choice(subsets.shape[0], size=cap, replace=False)
        subsets = subsets[np.sort(chosen)]
    return subsets


def _interpolate(dd: NDArray[np.float64], subsets: NDArray[np.int64]) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """Coefficients of the curve through the origin and each subset, plus a validity mask"""
    a = dd[subsets[:, 0], 0]
    ya = dd[subsets[:, 0], 1]
    if subsets.shape[1] == 1:
        valid = np.abs(a) > INTERPOLATION_TOLERANCE
        slopes = np.divide(ya, a, out=np.zeros_like(ya), where=valid)
        return slopes.reshape(-1, 1), valid
    b = dd[subsets[:, 1], 0]
    yb = dd[subsets[:, 1], 1]
    det = a * b * (b - a)
    valid = (
        (np.abs(a) > INTERPOLATION_TOLERANCE)
        & (np.abs(b) > INTERPOLATION_TOLERANCE)
        & (np.abs(b - a) > INTERPOLATION_TOLERANCE)
    )
    safe = np.where(valid, det, 1.0)
    c1 = (ya * b**2 - yb * a**2) / safe
    c2 = (a * yb - b * ya) / safe
    return np.column_stack([c1, c2]), valid


def fit_polynomial_exact(
    dd: NDArray[np.float64],
    labels: NDArray[np.int64],
    degree: int,
    candidate_cap: Optional[int] = None,
    seed: int = 0,
) -> tuple[NDArray[np.float64], int, int]:
    """
    Best curve among those through the origin and `degree` DD-points.
    Returns (coefficients, training errors, number of candidates tried);
    ties go to the first candidate in enumeration order.
    """
    if degree not in (1, 2):
        raise ValidationError(f"exact DD-classifiers support degree 1 or 2, got {degree}")
    cap = candidate_cap or settings.DD_CANDIDATE_CAP
    distinct = np.unique(dd[np.abs(dd[:, 0]) > INTERPOLATION_TOLERANCE, 0])
    if distinct.size < degree:
        raise ValidationError(
            f"DD-plot needs at least {degree} points with distinct nonzero class-0 depth"
        )
    subsets = _candidate_subsets(dd.shape[0], degree, cap, RngSeed(seed).child("dd-candidates"))
    coefficients, valid = _interpolate(dd, subsets)
    coefficients = coefficients[valid]
    if coefficients.shape[0] == 0:
        raise ValidationError("no DD candidate curve could be interpolated")
    errors = count_errors(coefficients, dd, labels)
    best = int(np.argmin(errors))
    return coefficients[best], int(errors[best]), int(coefficients.shape[0])


def smoothed_objective(
    coefficients: NDArray[np.float64], dd: NDArray[np.float64], labels: NDArray[np.int64], t: float
) -> float:
    """Training error with I[d > 0] replaced by the logistic 1 / (1 + exp(-t d))"""
    gap = _powers(dd[:, 0], coefficients.size) @ coefficients - dd[:, 1]
    signed = np.where(labels == 1, gap, -gap)
    return float(expit(t * signed).sum())


def _smoothed_gradient(
    coefficients: NDArray[np.float64], dd: NDArray[np.float64], labels: NDArray[np.int64], t: float
) -> NDArray[np.float64]:
    basis = _powers(dd[:, 0], coefficients.size)
    sign = np.where(labels == 1, 1.0, -1.0)
    s = expit(t * sign * (basis @ coefficients - dd[:, 1]))
    return (t * sign * s * (1.0 - s)) @ basis


def fit_polynomial_smoothed(
    dd: NDArray[np.float64],
    labels: NDArray[np.int64],
    degree: int,
    t: Optional[float] = None,
    starts: Optional[int] = None,
    seed: int = 0,
    maxiter: Optional[int] = None,
) -> tuple[NDArray[np.float64], int, int]:
    """
    BFGS on the logistic surrogate from `starts` standard-normal coefficient
    vectors. Every visited iterate is scored by the exact error count and
    the best one wins. Returns (coefficients, training errors, starts used).
    """
    if degree not in (1, 2, 3):
        raise ValidationError(f"smoothed DD-classifiers support degree 1 to 3, got {degree}")
    t = t or settings.DD_SMOOTH_T
    starts = starts or settings.DD_SMOOTH_STARTS
    maxiter = maxiter or settings.DD_SMOOTH_MAXITER
    if t <= 0:
        raise ValidationError(f"t must be positive, got {t}")
    rng = RngSeed(seed).child("dd-starts").generator()
    initial = rng.standard_normal((starts, degree))
    best_coefficients: Optional[NDArray[np.float64]] = None
    best_errors = math.inf
    used = 0
    for start in initial:
        with np.errstate(over="ignore", invalid="ignore"):
            if not np.isfinite(smoothed_objective(start, dd, labels, t)):
                continue
            visited = [start.copy()]
            result = minimize(
                smoothed_objective,
                start,
                args=(dd, labels, t),
                jac=_smoothed_gradient,
                method="BFGS",
                callback=lambda xk: visited.append(np.array(xk, copy=True)),
                options={"maxiter": maxiter},
            )
        visited.append(np.asarray(result.x, dtype=float))
        path = np.array([v for v in visited if np.all(np.isfinite(v))])
        if path.size == 0:
            continue
        used += 1
        errors = count_errors(path, dd, labels)
        index = int(np.argmin(errors))
        if errors[index] < best_errors:
            best_errors = int(errors[index])
            best_coefficients = path[index]
    if best_coefficients is None:
        raise ValidationError("smoothed DD objective was not finite from any start")
    return best_coefficients, int(best_errors), used


class DDClassifier(BaseClassifier):
    """Exact (m = 1, 2) or smoothed (m = 1, 2, 3) DD-classifier"""

    model: Optional[DDModel] = None

    @log_duration("dd.fit")
    def _fit_internal(self, training: LabeledSample) -> None:
        config = self.config
        dd = dd_coordinates(training.points, training, config.depth)
        if config.smoothed:
            coefficients, errors, tried = fit_polynomial_smoothed(
                dd, training.labels, config.degree, t=config.t, starts=config.starts, seed=config.seed
            )
            metadata = {"starts": tried, "t": config.t}
        else:
            coefficients, errors, tried = fit_polynomial_exact(
                dd, training.labels, config.degree, seed=config.seed
            )
            metadata = {"candidates": tried}
        self.model = DDModel(
            depth=config.depth,
            coefficients=coefficients,
            training_errors=errors,
            smoothed=config.smoothed,
            metadata=metadata,
        )
        self.logger.debug(
            f"{self.name}: coefficients {np.round(coefficients, 6).tolist()}, "
            f"{errors} training errors"
        )

    def labels_from_dd(self, dd: NDArray[np.float64]) -> NDArray[np.int64]:
        """1 iff D_1 - r(D_0) exceeds the curve tolerance"""
        return (dd[:, 1] - self.model.curve(dd[:, 0]) > CURVE_TOLERANCE).astype(np.int64)

    def _classify_internal(self, x: NDArray[np.float64], tie_seed: RngSeed) -> int:
        return int(self.labels_from_dd(dd_coordinates(x.reshape(1, -1), self.training, self.config.depth))[0])

    def predict(self, queries: ArrayLike, tie_seed: Optional[RngSeed] = None) -> NDArray[np.int64]:
        training = self._check_fitted()
        return self.labels_from_dd(dd_coordinates(queries, training, self.config.depth))
