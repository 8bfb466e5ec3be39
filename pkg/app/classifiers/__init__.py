"""
Binary classifiers: depth-based kNN and its competitors (Euclidean and
affine-invariant kNN, LDA/QDA, DD-classifiers)
"""
from typing import Optional

from numpy.typing import ArrayLike

from app.core.exceptions import ValidationError
from app.core.rng import RngSeed
from app.models.classification import (
    ClassifierConfig,
    ClassifierKind,
    DDPoint,
    PosteriorEstimate,
)
from app.models.depth import DepthSpec
from app.models.sample import LabeledSample
from app.neighbors.ordering import outward_ordering

from .base_classifier import BaseClassifier, ConstantClassifier
from .dd import DDClassifier, dd_coordinates, dd_points, fit_polynomial_exact, fit_polynomial_smoothed
from .factory import ClassifierFactory
from .gaussian import GaussianClassifier, fit_gaussian_model, gaussian_labels
from .knn import AffineKnnClassifier, DepthKnnClassifier, EuclideanKnnClassifier
from .voting import posterior, resolve_vote


def dknn_posterior(
    x: ArrayLike, training: LabeledSample, spec: Optional[DepthSpec] = None, k: int = 1
) -> PosteriorEstimate:
    """Class-1 fraction of the depth-based neighborhood of size k; one class suffices"""
    return posterior(outward_ordering(x, training.points, spec), training.labels, k)


def dknn_classify(
    x: ArrayLike,
    training: LabeledSample,
    spec: Optional[DepthSpec] = None,
    k: int = 1,
    tie_seed: Optional[RngSeed] = None,
) -> int:
    config = ClassifierConfig(method=ClassifierKind.DKNN, k=k, depth=spec or DepthSpec())
    return DepthKnnClassifier(config).fit(training).classify(x, tie_seed)


def euclidean_knn_classify(
    x: ArrayLike, training: LabeledSample, k: int = 1, tie_seed: Optional[RngSeed] = None
) -> int:
    config = ClassifierConfig(method=ClassifierKind.KNN, k=k)
    return EuclideanKnnClassifier(config).fit(training).classify(x, tie_seed)


def affine_knn_classify(
    x: ArrayLike, training: LabeledSample, k: int = 1, tie_seed: Optional[RngSeed] = None
) -> int:
    config = ClassifierConfig(method=ClassifierKind.KNNAFF, k=k)
    return AffineKnnClassifier(config).fit(training).classify(x, tie_seed)


def fit_lda(training: LabeledSample) -> GaussianClassifier:
    return GaussianClassifier(ClassifierConfig(method=ClassifierKind.LDA)).fit(training)


def fit_qda(training: LabeledSample) -> GaussianClassifier:
    return GaussianClassifier(ClassifierConfig(method=ClassifierKind.QDA)).fit(training)


def classify_gaussian(model: GaussianClassifier, x: ArrayLike) -> int:
    return model.classify(x)


def fit_dd_exact(
    training: LabeledSample, spec: Optional[DepthSpec] = None, m: int = 1, seed: int = 0
) -> DDClassifier:
    config = ClassifierConfig(method=ClassifierKind.DD, depth=spec or DepthSpec(), degree=m, seed=seed)
    return DDClassifier(config).fit(training)


def fit_dd_smoothed(
    training: LabeledSample,
    spec: Optional[DepthSpec] = None,
    m: int = 1,
    t: Optional[float] = None,
    starts: Optional[int] = None,
    seed: int = 0,
) -> DDClassifier:
    options = {"t": t, "starts": starts}
    config = ClassifierConfig(
        method=ClassifierKind.DD,
        depth=spec or DepthSpec(),
        degree=m,
        smoothed=True,
        seed=seed,
        **{key: value for key, value in options.items() if value is not None},
    )
    return DDClassifier(config).fit(training)


def classify_dd(model: DDClassifier, x: ArrayLike, spec: Optional[DepthSpec] = None) -> int:
    """Label of x under a fitted DD-classifier; `spec`, if given, must match the fitted depth"""
    if spec is not None and spec != model.config.depth:
        raise ValidationError("depth spec differs from the one the DD-classifier was fitted with")
    return model.classify(x)


__all__ = [
    "BaseClassifier",
    "ConstantClassifier",
    "DepthKnnClassifier",
    "EuclideanKnnClassifier",
    "AffineKnnClassifier",
    "GaussianClassifier",
    "DDClassifier",
    "ClassifierFactory",
    "ClassifierConfig",
    "ClassifierKind",
    "DDPoint",
    "PosteriorEstimate",
    "dknn_posterior",
    "dknn_classify",
    "euclidean_knn_classify",
    "affine_knn_classify",
    "fit_lda",
    "fit_qda",
    "classify_gaussian",
    "fit_gaussian_model",
    "gaussian_labels",
    "dd_points",
    "dd_coordinates",
    "fit_polynomial_exact",
    "fit_polynomial_smoothed",
    "fit_dd_exact",
    "fit_dd_smoothed",
    "classify_dd",
    "posterior",
    "resolve_vote",
]
