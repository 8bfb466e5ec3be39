from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed, as_seed
from app.models.classification import ClassifierConfig
from app.models.sample import LabeledSample, as_point, as_points


class BaseClassifier(ABC):
    """Abstract base class for binary classifiers"""

    requires_both_classes: bool = True

    def __init__(self, config: ClassifierConfig):
        self.config = config
        self.training: Optional[LabeledSample] = None
        self.logger = get_logger(f"app.classifiers.{config.method.value}")

    @abstractmethod
    def _fit_internal(self, training: LabeledSample) -> None:
        """Fit on a validated training sample"""
        pass

    @abstractmethod
    def _classify_internal(self, x: NDArray[np.float64], tie_seed: RngSeed) -> int:
        """Label of a single validated query point"""
        pass

    @property
    def is_fitted(self) -> bool:
        return self.training is not None

    @property
    def name(self) -> str:
        return self.config.display_name()

    def fit(self, training: LabeledSample) -> "BaseClassifier":
        if self.requires_both_classes and not training.has_both_classes():
            raise ValidationError(f"{self.name} needs training points from both classes")
        self._fit_internal(training)
        self.training = training
        return self

    def _check_fitted(self) -> LabeledSample:
        if self.training is None:
            raise ValidationError(f"{self.name} has not been fitted")
        return self.training

    def classify(self, x: ArrayLike, tie_seed: Optional[RngSeed] = None) -> int:
        """Label of x; `tie_seed` feeds the coin of an unresolved vote tie"""
        training = self._check_fitted()
        query = as_point(x, training.d)
        seed = as_seed(tie_seed, settings.DEFAULT_SEED)
        return int(self._classify_internal(query, seed))

    def predict(self, queries: ArrayLike, tie_seed: Optional[RngSeed] = None) -> NDArray[np.int64]:
        """Labels of every query row; query i draws ties from tie_seed.child("query", i)"""
        training = self._check_fitted()
        points = as_points(queries, training.d)
        seed = as_seed(tie_seed, settings.DEFAULT_SEED)
        return np.array(
            [self._classify_internal(q, seed.child("query", i)) for i, q in enumerate(points)],
            dtype=np.int64,
        )

    def error_rate(self, test: LabeledSample, tie_seed: Optional[RngSeed] = None) -> float:
        """Test misclassification frequency in percent"""
        predictions = self.predict(test.points, tie_seed)
        return float(100.0 * np.mean(predictions != test.labels))

    def get_classifier_info(self) -> Dict[str, Any]:
        """Get information about the classifier"""
        return {
            "classifier_type": self.__class__.__name__,
            "name": self.name,
            "method": self.config.method.value,
            "fitted": self.is_fitted,
            "training_size": self.training.n if self.training is not None else None,
        }


class ConstantClassifier(BaseClassifier):
    """Always predicts the configured label"""

    requires_both_classes = False

    def _fit_internal(self, training: LabeledSample) -> None:
        pass

    def _classify_internal(self, x: NDArray[np.float64], tie_seed: RngSeed) -> int:
        return self.config.label
