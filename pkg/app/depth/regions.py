"""
Sample depth regions, indexed by level or by probability content.
"""
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import ValidationError
from app.depth.factory import get_depth
from app.models.depth import DepthRegion, DepthSpec
from app.models.sample import as_points

# Depth values closer than this are one level (float noise from reflections,
# projections and solves must not split a tie).
LEVEL_RTOL = 1e-12
LEVEL_ATOL = 1e-15


def group_levels(depths: NDArray[np.float64]) -> tuple[list[NDArray[np.int64]], NDArray[np.float64]]:
    """
    Indices grouped by equal depth, deepest group first, and the depth of each
    group (its largest member value). Consecutive sorted values within
    tolerance are chained into one group.
    """
    order = np.argsort(-depths, kind="stable")
    ordered = depths[order]
    if ordered.size == 0:
        return [], np.zeros(0)
    breaks = ~np.isclose(ordered[1:], ordered[:-1], rtol=LEVEL_RTOL, atol=LEVEL_ATOL)
    starts = np.concatenate([[0], np.flatnonzero(breaks) + 1])
    groups = [np.sort(chunk) for chunk in np.split(order, starts[1:])]
    return groups, ordered[starts]


def sample_depths(points: ArrayLike, spec: Optional[DepthSpec] = None) -> NDArray[np.float64]:
    """Depth of each sample point with respect to the sample itself"""
    sample = as_points(points)
    return get_depth(spec).depth_all(sample, sample)


def region_by_level(
    points: ArrayLike, spec: Optional[DepthSpec] = None, alpha: float = 0.0
) -> DepthRegion:
    """Indices of sample points with depth >= alpha"""
    if alpha < 0:
        raise ValidationError(f"alpha must be non-negative, got {alpha}")
    depths = sample_depths(points, spec)
    return DepthRegion(level=float(alpha), member_indices=np.flatnonzero(depths >= alpha))


def region_by_content(
    points: ArrayLike, spec: Optional[DepthSpec] = None, beta: float = 1.0
) -> DepthRegion:
    """
    Smallest sample region holding at least ceil(beta * n) points; the level
    is the ceil(beta * n)-th largest depth and ties at the cut are all kept.
    """
    if not 0 < beta <= 1:
        raise ValidationError(f"beta must lie in (0, 1], got {beta}")
    depths = sample_depths(points, spec)
    target = min(depths.size, max(1, math.ceil(beta * depths.size - 1e-9)))
    groups, levels = group_levels(depths)
    taken = 0
    for count, group in enumerate(groups, start=1):
        taken += group.size
        if taken >= target:
            members = np.sort(np.concatenate(groups[:count]))
            return DepthRegion(level=float(levels[count - 1]), member_indices=members)
    raise AssertionError("unreachable: groups cover the sample")
