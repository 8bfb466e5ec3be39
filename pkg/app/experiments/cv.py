"""
Leave-one-out choice of k for the nearest-neighbor classifiers.

Each held-out point gets a fresh fit on the other n - 1 points (the whitening
of kNNaff included) and a single ordering, from which every k of the grid is
voted.
"""
from typing import Optional, Sequence, Union

import numpy as np

from app.classifiers.factory import ClassifierFactory
from app.classifiers.knn import NeighborVoteClassifier
from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed, as_seed
from app.models.classification import ClassifierConfig, ClassifierKind
from app.models.experiment import CrossValidationResult
from app.models.neighborhood import k_from_beta
from app.models.sample import LabeledSample
from app.observability.decorators import log_duration

logger = get_logger("app.experiments.cv")

DEFAULT_BETAS = tuple(round(0.01 * i, 2) for i in range(1, 51))


def default_k_grid(n: int) -> list[int]:
    """Distinct k for beta = 0.01, 0.02, ..., 0.50, capped at n - 1"""
    if n < 2:
        raise ValidationError("leave-one-out needs at least 2 points")
    return sorted({min(n - 1, k_from_beta(beta, n)) for beta in DEFAULT_BETAS})


def _as_config(method: Union[ClassifierConfig, ClassifierKind, str]) -> ClassifierConfig:
    if isinstance(method, ClassifierConfig):
        config = method
    else:
        config = ClassifierConfig(method=ClassifierKind(method))
    if not config.method.uses_neighbors:
        raise ValidationError(f"k selection applies to nearest-neighbor methods, not {config.method.value}")
    return config.model_copy(update={"k": 1, "beta": None})


@log_duration("experiments.loocv", level="info")
def loocv_errors(
    training: LabeledSample,
    method: Union[ClassifierConfig, ClassifierKind, str],
    grid: Optional[Sequence[int]] = None,
    tie_seed: Union[RngSeed, int, None] = None,
) -> CrossValidationResult:
    """Leave-one-out misclassification count for every k in the grid"""
    config = _as_config(method)
    ks = sorted(set(grid)) if grid is not None else default_k_grid(training.n)
    if not ks:
        raise ValidationError("k grid is empty")
    if ks[0] < 1 or ks[-1] > training.n - 1:
        raise ValidationError(f"k grid must lie in [1, {training.n - 1}]")
    seed = as_seed(tie_seed, settings.DEFAULT_SEED).child("loocv")
    errors = np.zeros(len(ks), dtype=np.int64)
    for i in range(training.n):
        classifier = ClassifierFactory.create(config)
        assert isinstance(classifier, NeighborVoteClassifier)
        classifier.fit(training.without(i))
        ordering = classifier.ordering(training.points[i])
        for j, k in enumerate(ks):
            label = classifier.vote(ordering, k, seed.child("held-out", i)).label
            errors[j] += int(label != training.labels[i])
    best = ks[int(np.argmin(errors))]
    logger.debug(f"{config.display_name()} leave-one-out errors {dict(zip(ks, errors.tolist()))}")
    return CrossValidationResult(grid=ks, errors=errors.tolist(), best_k=best)


def loocv_select_k(
    training: LabeledSample,
    method: Union[ClassifierConfig, ClassifierKind, str],
    grid: Optional[Sequence[int]] = None,
    tie_seed: Union[RngSeed, int, None] = None,
) -> int:
    """k with the fewest leave-one-out errors; ties go to the smallest k"""
    return loocv_errors(training, method, grid, tie_seed).best_k


def with_selected_k(
    training: LabeledSample,
    config: ClassifierConfig,
    tie_seed: Union[RngSeed, int, None] = None,
) -> ClassifierConfig:
    """`config` unchanged when it fixes k or beta, else a copy carrying the leave-one-out k"""
    if not config.method.uses_neighbors or config.k is not None or config.beta is not None:
        return config
    k = loocv_select_k(training, config, tie_seed=tie_seed)
    logger.debug(f"Leave-one-out chose k={k} for {config.display_name()}")
    return config.model_copy(update={"k": k})
