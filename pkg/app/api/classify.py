from typing import List, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from app.classifiers.factory import ClassifierFactory
from app.core.config import settings
from app.core.logging_config import get_logger
from app.core.rng import RngSeed
from app.experiments.cv import with_selected_k
from app.models.classification import ClassifierConfig
from app.models.sample import LabeledSample

router = APIRouter(tags=["classify"])
logger = get_logger("app.api.classify")


class ClassifyRequest(BaseModel):
    train_points: List[List[float]] = Field(min_length=1)
    train_labels: List[int] = Field(min_length=1)
    queries: List[List[float]] = Field(min_length=1)
    classifier: ClassifierConfig
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)


class ClassifyResponse(BaseModel):
    classifier: str
    k: Optional[int] = None
    labels: List[int]


@router.post("/classify", response_model=ClassifyResponse)
def classify(request: ClassifyRequest):
    """
    Fit the requested classifier on the training sample and label every
    query. Neighbor methods given neither k nor beta pick k by leave-one-out.
    """
    training = LabeledSample(request.train_points, request.train_labels)
    seed = RngSeed(request.seed)
    config = with_selected_k(training, request.classifier, seed.child("loocv"))
    logger.info(f"Classify request: {config.display_name()} on n={training.n}, {len(request.queries)} queries")
    classifier = ClassifierFactory.create(config).fit(training)
    labels = classifier.predict(request.queries, seed.child("ties"))
    return ClassifyResponse(
        classifier=classifier.name,
        k=getattr(classifier, "k", None),
        labels=[int(label) for label in labels],
    )
