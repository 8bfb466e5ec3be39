"""
Nearest-neighbor classifiers: depth-based (neighborhoods from the sample
symmetrized about x), Euclidean, and Euclidean on whitened data.
"""
from abc import abstractmethod
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.classifiers.base_classifier import BaseClassifier
from app.classifiers.voting import posterior, resolve_vote
from app.core.linalg import inverse_sqrt, pooled_covariance
from app.core.rng import RngSeed
from app.models.classification import PosteriorEstimate, VoteOutcome
from app.models.neighborhood import OutwardOrdering
from app.models.sample import LabeledSample, as_point
from app.neighbors.ordering import euclidean_ordering, outward_ordering


class NeighborVoteClassifier(BaseClassifier):
    """Vote among the leading groups of an x-outward ordering of the training points"""

    k: Optional[int] = None

    @abstractmethod
    def ordering(self, x: ArrayLike) -> OutwardOrdering:
        """x-outward ordering of the fitted training points"""
        pass

    def _fit_internal(self, training: LabeledSample) -> None:
        self.k = self.config.resolve_k(training.n)

    def vote(self, ordering: OutwardOrdering, k: int, tie_seed: RngSeed) -> VoteOutcome:
        training = self._check_fitted()
        return resolve_vote(ordering, training.labels, k, tie_seed)

    def _classify_internal(self, x: NDArray[np.float64], tie_seed: RngSeed) -> int:
        return self.vote(self.ordering(x), self.k, tie_seed).label

    def posterior(self, x: ArrayLike, k: Optional[int] = None) -> PosteriorEstimate:
        training = self._check_fitted()
        return posterior(self.ordering(as_point(x, training.d)), training.labels, k or self.k)

    def get_classifier_info(self) -> Dict[str, Any]:
        info = super().get_classifier_info()
        info["k"] = self.k
        return info


class DepthKnnClassifier(NeighborVoteClassifier):
    def ordering(self, x: ArrayLike) -> OutwardOrdering:
        return outward_ordering(x, self._check_fitted().points, self.config.depth)

    def get_classifier_info(self) -> Dict[str, Any]:
        info = super().get_classifier_info()
        info["depth"] = self.config.depth.kind.value
        return info


class EuclideanKnnClassifier(NeighborVoteClassifier):
    def ordering(self, x: ArrayLike) -> OutwardOrdering:
        return euclidean_ordering(x, self._check_fitted().points)


class AffineKnnClassifier(NeighborVoteClassifier):
    """Euclidean kNN after whitening by the pooled training covariance"""

    whitening: Optional[NDArray[np.float64]] = None

    def _fit_internal(self, training: LabeledSample) -> None:
        super()._fit_internal(training)
        self.whitening = inverse_sqrt(pooled_covariance(training))

    def ordering(self, x: ArrayLike) -> OutwardOrdering:
        return euclidean_ordering(x, self._check_fitted().points, whitening=self.whitening)
