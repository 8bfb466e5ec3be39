"""
Bayes rule and Monte Carlo Bayes risk from exact class densities
"""
import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed, as_seed
from app.experiments.setups import SimulationSetup, draw, get_setup
from app.models.experiment import RiskEstimate, SetupId
from app.models.sample import as_points

logger = get_logger("app.experiments.bayes")

BAYES_CHUNK = 100_000


def _resolve(setup: Union[SetupId, str, SimulationSetup]) -> SimulationSetup:
    return setup if isinstance(setup, SimulationSetup) else get_setup(setup)


def bayes_classify(setup: Union[SetupId, str, SimulationSetup], points: ArrayLike) -> NDArray[np.int64]:
    """Label 1 iff eta(x) > 1/2"""
    return (_resolve(setup).posterior(as_points(points)) > 0.5).astype(np.int64)


def bayes_risk(
    setup: Union[SetupId, str, SimulationSetup],
    budget: int = 1_000_000,
    seed: Union[RngSeed, int, None] = None,
) -> RiskEstimate:
    """
    L_opt = E[min(eta(X), 1 - eta(X))] averaged over `budget` draws of X, with
    its standard error.
    """
    if budget < 2:
        raise ValidationError(f"budget must be at least 2, got {budget}")
    resolved = _resolve(setup)
    stream = as_seed(seed, settings.DEFAULT_SEED).child("bayes-risk")
    total = 0.0
    total_sq = 0.0
    for chunk_index, start in enumerate(range(0, budget, BAYES_CHUNK)):
        size = min(BAYES_CHUNK, budget - start)
        sample = draw(resolved, size, stream.child("chunk", chunk_index))
        eta = resolved.posterior(sample.points)
        local = np.minimum(eta, 1.0 - eta)
        total += float(local.sum())
        total_sq += float(np.square(local).sum())
    mean = total / budget
    variance = max(0.0, (total_sq - budget * mean**2) / (budget - 1))
    estimate = RiskEstimate(risk=mean, standard_error=math.sqrt(variance / budget), draws=budget)
    logger.info(
        f"Bayes risk of {getattr(resolved.id, 'value', resolved.id)}: "
        f"{estimate.risk:.5f} (se {estimate.standard_error:.2e}, {budget} draws)"
    )
    return estimate
