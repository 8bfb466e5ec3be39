"""
Gaussian plug-in rules: LDA (pooled within-class covariance) and QDA (one
covariance per class), both with class-frequency priors.
"""
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.classifiers.base_classifier import BaseClassifier
from app.core.exceptions import InsufficientDataError, ValidationError
from app.core.linalg import checked_eigh, covariance, squared_mahalanobis, within_class_covariance
from app.core.rng import RngSeed
from app.models.classification import ClassifierKind, GaussianModel
from app.models.sample import LabeledSample, as_points


def fit_gaussian_model(training: LabeledSample, pooled: bool) -> GaussianModel:
    n0, n1 = training.class_counts()
    if min(n0, n1) == 0:
        raise ValidationError("Gaussian rules need training points from both classes")
    means = tuple(training.class_points(label).mean(axis=0) for label in (0, 1))
    if pooled:
        shared = within_class_covariance(training)
        checked_eigh(shared, what="pooled within-class covariance")
        covariances = (shared, shared)
    else:
        for label, count in ((0, n0), (1, n1)):
            if count < training.d + 1:
                raise InsufficientDataError(
                    f"QDA needs at least d + 1 = {training.d + 1} points in class {label}, got {count}"
                )
        covariances = tuple(covariance(training.class_points(label)) for label in (0, 1))
        for label, cov in zip((0, 1), covariances):
            checked_eigh(cov, what=f"class {label} covariance")
    return GaussianModel(
        means=means, covariances=covariances, priors=(n0 / training.n, n1 / training.n), pooled=pooled
    )


def log_discriminants(model: GaussianModel, points: ArrayLike) -> NDArray[np.float64]:
    """(m, 2) array of log pi_j f_j(x) up to the common -d/2 log(2 pi)"""
    array = as_points(points)
    columns = []
    for label in (0, 1):
        cov = model.covariances[label]
        _, logdet = np.linalg.slogdet(cov)
        dist = squared_mahalanobis(array, model.means[label], cov)
        columns.append(np.log(model.priors[label]) - 0.5 * logdet - 0.5 * dist)
    return np.column_stack(columns)


def gaussian_labels(model: GaussianModel, points: ArrayLike) -> NDArray[np.int64]:
    """1 iff pi_1 f_1(x) > pi_0 f_0(x); exact ties go to class 0"""
    scores = log_discriminants(model, points)
    return (scores[:, 1] > scores[:, 0]).astype(np.int64)


class GaussianClassifier(BaseClassifier):
    model: Optional[GaussianModel] = None

    @property
    def pooled(self) -> bool:
        return self.config.method == ClassifierKind.LDA

    def _fit_internal(self, training: LabeledSample) -> None:
        self.model = fit_gaussian_model(training, pooled=self.pooled)

    def _classify_internal(self, x: NDArray[np.float64], tie_seed: RngSeed) -> int:
        return int(gaussian_labels(self.model, x.reshape(1, -1))[0])

    def predict(self, queries: ArrayLike, tie_seed: Optional[RngSeed] = None) -> NDArray[np.int64]:
        training = self._check_fitted()
        return gaussian_labels(self.model, as_points(queries, training.d))
