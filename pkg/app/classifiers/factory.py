"""
Classifier Factory building unfitted classifiers from a ClassifierConfig
"""
from typing import Any, Dict, Type

from app.classifiers.base_classifier import BaseClassifier, ConstantClassifier
from app.classifiers.dd import DDClassifier
from app.classifiers.gaussian import GaussianClassifier
from app.classifiers.knn import AffineKnnClassifier, DepthKnnClassifier, EuclideanKnnClassifier
from app.models.classification import ClassifierConfig, ClassifierKind


class ClassifierFactory:
    """Factory class mapping classifier kinds to implementations"""

    _registry: Dict[ClassifierKind, Type[BaseClassifier]] = {
        ClassifierKind.DKNN: DepthKnnClassifier,
        ClassifierKind.KNN: EuclideanKnnClassifier,
        ClassifierKind.KNNAFF: AffineKnnClassifier,
        ClassifierKind.LDA: GaussianClassifier,
        ClassifierKind.QDA: GaussianClassifier,
        ClassifierKind.DD: DDClassifier,
        ClassifierKind.CONSTANT: ConstantClassifier,
    }

    @classmethod
    def create(cls, config: ClassifierConfig) -> BaseClassifier:
        """Create an unfitted classifier"""
        return cls._registry[config.method](config)

    @classmethod
    def from_options(cls, method: str, **options: Any) -> BaseClassifier:
        """Create from loose options, e.g. ``from_options("dknn", k=13)``"""
        return cls.create(ClassifierConfig(method=ClassifierKind(method), **options))

    @classmethod
    def supported_methods(cls) -> list[str]:
        return [kind.value for kind in cls._registry]
