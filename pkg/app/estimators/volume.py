"""
Volumes of nearest-neighbor neighborhoods: exact Euclidean balls, and depth
regions of the symmetrized sample by hit-or-miss Monte Carlo.
"""
import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gamma

from app.core.config import settings
from app.core.exceptions import DegenerateVolumeError, ValidationError
from app.core.logging_config import get_logger
from app.core.rng import RngSeed, as_seed
from app.depth.factory import get_depth
from app.models.depth import DepthSpec
from app.models.estimation import EstimationMode, VolumeEstimate
from app.models.sample import as_point, as_points
from app.neighbors.ordering import euclidean_ordering, outward_ordering
from app.neighbors.symmetrize import symmetrize

logger = get_logger("app.estimators.volume")

MONTE_CARLO_MAX_DIM = 3
MONTE_CARLO_CHUNK = 50_000
LEVEL_SLACK = 1e-12


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / gamma(d / 2 + 1)


def euclidean_ball_volume(radius: float, d: int) -> float:
    return unit_ball_volume(d) * radius**d


def _euclidean_volume(x, points, k: int) -> VolumeEstimate:
    ordering = euclidean_ordering(x, points)
    neighborhood = ordering.neighborhood(k)
    radius = math.sqrt(-neighborhood.level)
    if radius == 0.0:
        raise DegenerateVolumeError(f"the {k} nearest points coincide with the query")
    return VolumeEstimate(
        value=euclidean_ball_volume(radius, points.shape[1]),
        realized_count=neighborhood.realized_count,
    )


def _depth_volume(
    x, points, k: int, spec: Optional[DepthSpec], budget: Optional[int], seed: RngSeed
) -> VolumeEstimate:
    n, d = points.shape
    neighborhood = outward_ordering(x, points, spec).neighborhood(k)
    level = neighborhood.level
    if d == 1:
        reach = float(np.max(np.abs(points[neighborhood.member_indices, 0] - x[0])))
        if reach == 0.0:
            raise DegenerateVolumeError(f"the {k} deepest points coincide with the query")
        return VolumeEstimate(value=2.0 * reach, realized_count=neighborhood.realized_count)
    if d > MONTE_CARLO_MAX_DIM and budget is None:
        raise ValidationError(
            f"Monte Carlo depth-region volume is limited to d <= {MONTE_CARLO_MAX_DIM} "
            "unless a draw budget is given"
        )
    if level <= 0:
        raise DegenerateVolumeError("depth region at level 0 is unbounded")
    draws = budget or settings.MC_VOLUME_BUDGET
    depth = get_depth(spec)
    combined = symmetrize(x, points).combined
    low, high = depth.region_bounds(combined, level)
    widths = high - low
    box_volume = float(np.prod(widths))
    if box_volume <= 0.0:
        raise DegenerateVolumeError("depth region is contained in a flat box")
    generator = seed.generator()
    hits = 0
    for start in range(0, draws, MONTE_CARLO_CHUNK):
        size = min(MONTE_CARLO_CHUNK, draws - start)
        uniform = low + widths * generator.random((size, d))
        values = depth.depth_all(uniform, combined)
        hits += int(np.count_nonzero(values >= level - LEVEL_SLACK * max(1.0, level)))
    share = hits / draws
    if hits == 0:
        raise DegenerateVolumeError(f"no Monte Carlo draw out of {draws} hit the depth region")
    logger.debug(f"Depth-region volume: {hits}/{draws} hits in a box of volume {box_volume:.4g}")
    return VolumeEstimate(
        value=box_volume * share,
        standard_error=box_volume * math.sqrt(share * (1.0 - share) / draws),
        exact=False,
        draws=draws,
        realized_count=neighborhood.realized_count,
    )


def neighborhood_volume(
    x: ArrayLike,
    points: ArrayLike,
    k: int,
    mode: Union[EstimationMode, str] = EstimationMode.EUCLIDEAN,
    spec: Optional[DepthSpec] = None,
    budget: Optional[int] = None,
    seed: Union[RngSeed, int, None] = None,
) -> VolumeEstimate:
    """
    Euclidean mode: volume of the smallest ball about x holding k points.
    Depth mode: volume of the smallest symmetrized depth region holding k
    points, exact for d = 1 and Monte Carlo over the region's bounding box
    otherwise.
    """
    sample = as_points(points)
    query = as_point(x, sample.shape[1])
    mode = EstimationMode(mode)
    if mode == EstimationMode.EUCLIDEAN:
        return _euclidean_volume(query, sample, k)
    stream = as_seed(seed, settings.DEFAULT_SEED).child("volume")
    return _depth_volume(query, sample, k, spec, budget, stream)
