"""
x-outward orderings of a sample: by depth in the sample symmetrized about x,
or by (optionally whitened) Euclidean distance to x. Both expose whole tie
groups only.
"""
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.logging_config import get_logger
from app.depth.factory import get_depth
from app.depth.regions import group_levels
from app.models.depth import DepthSpec
from app.models.neighborhood import DepthNeighborhood, OutwardOrdering
from app.models.sample import as_point, as_points
from app.neighbors.symmetrize import symmetrize

logger = get_logger("app.neighbors.ordering")


def _ordering(scores: NDArray[np.float64], query: NDArray[np.float64]) -> OutwardOrdering:
    groups, levels = group_levels(scores)
    return OutwardOrdering(groups=tuple(groups), depths=levels, query=query)


def symmetrized_depths(
    x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None
) -> NDArray[np.float64]:
    """
    Depth of each original point in the 2n-point sample symmetrized about x.
    Reflections shape the distribution but are not ranked themselves.
    """
    sample = symmetrize(x, points)
    return get_depth(spec).depth_all(sample.originals, sample.combined)


def outward_ordering(
    x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None
) -> OutwardOrdering:
    originals = as_points(points)
    query = as_point(x, originals.shape[1])
    depths = symmetrized_depths(query, originals, spec)
    ordering = _ordering(depths, query)
    logger.debug(
        f"Outward ordering of {ordering.n} points in {len(ordering.groups)} depth groups"
    )
    return ordering


def depth_neighborhood(
    x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None, k: int = 1
) -> DepthNeighborhood:
    """Smallest symmetrized depth region holding at least k original points"""
    return outward_ordering(x, points, spec).neighborhood(k)


def euclidean_ordering(
    x: ArrayLike, points: ArrayLike, whitening: Optional[NDArray[np.float64]] = None
) -> OutwardOrdering:
    """
    Ordering by distance to x, nearest group first. With `whitening` W the
    distance is |W (X_i - x)|. Group scores are negated squared distances.
    """
    originals = as_points(points)
    query = as_point(x, originals.shape[1])
    offsets = originals - query
    if whitening is not None:
        offsets = offsets @ np.asarray(whitening, dtype=float).T
    return _ordering(-np.einsum("ij,ij->i", offsets, offsets), query)
