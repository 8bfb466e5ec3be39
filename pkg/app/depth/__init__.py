"""
Statistical depth functions D(x, P^(n)) and sample depth regions
"""
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.models.depth import DepthKind, DepthSpec

from .base import BaseDepth
from .factory import DepthFactory, get_depth
from .regions import group_levels, region_by_content, region_by_level, sample_depths


def _spec_of(kind: DepthKind, spec: Optional[DepthSpec]) -> DepthSpec:
    if spec is None:
        return DepthSpec(kind=kind)
    if spec.kind != kind:
        return spec.model_copy(update={"kind": kind})
    return spec


def halfspace_depth(x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None) -> float:
    return get_depth(_spec_of(DepthKind.HALFSPACE, spec)).depth(x, points)


def simplicial_depth(x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None) -> float:
    return get_depth(_spec_of(DepthKind.SIMPLICIAL, spec)).depth(x, points)


def mahalanobis_depth(x: ArrayLike, points: ArrayLike) -> float:
    return get_depth(DepthSpec(kind=DepthKind.MAHALANOBIS)).depth(x, points)


def projection_depth(x: ArrayLike, points: ArrayLike, spec: Optional[DepthSpec] = None) -> float:
    return get_depth(_spec_of(DepthKind.PROJECTION, spec)).depth(x, points)


def depth_all(
    points: ArrayLike, reference: ArrayLike, spec: Optional[DepthSpec] = None
) -> NDArray[np.float64]:
    """Depth of every query row of `points` with respect to `reference`"""
    return get_depth(spec).depth_all(points, reference)


__all__ = [
    "BaseDepth",
    "DepthFactory",
    "DepthKind",
    "DepthSpec",
    "get_depth",
    "halfspace_depth",
    "simplicial_depth",
    "mahalanobis_depth",
    "projection_depth",
    "depth_all",
    "group_levels",
    "sample_depths",
    "region_by_level",
    "region_by_content",
]
