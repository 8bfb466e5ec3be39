from typing import Optional, Union

from numpy.typing import ArrayLike

from app.core.rng import RngSeed
from app.estimators.volume import neighborhood_volume
from app.models.depth import DepthSpec
from app.models.estimation import DensityEstimate, EstimationMode
from app.models.sample import as_points


def knn_density_estimate(
    x: ArrayLike,
    points: ArrayLike,
    k: int,
    mode: Union[EstimationMode, str] = EstimationMode.EUCLIDEAN,
    spec: Optional[DepthSpec] = None,
    budget: Optional[int] = None,
    seed: Union[RngSeed, int, None] = None,
) -> DensityEstimate:
    """
    k / (n vol) for the Euclidean ball; in depth mode the numerator is the
    realized count K of the depth neighborhood, so ties enlarge both terms.
    """
    sample = as_points(points)
    mode = EstimationMode(mode)
    volume = neighborhood_volume(x, sample, k, mode, spec, budget, seed)
    numerator = volume.realized_count if mode == EstimationMode.DEPTH else k
    n = sample.shape[0]
    return DensityEstimate(value=numerator / (n * volume.value), volume=volume, numerator=numerator, n=n)


def knn_density(
    x: ArrayLike,
    points: ArrayLike,
    k: int,
    mode: Union[EstimationMode, str] = EstimationMode.EUCLIDEAN,
    spec: Optional[DepthSpec] = None,
    budget: Optional[int] = None,
    seed: Union[RngSeed, int, None] = None,
) -> float:
    return knn_density_estimate(x, points, k, mode, spec, budget, seed).value
