from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from app.models.depth import DepthSpec
from app.models.estimation import EstimationMode
from app.models.sample import RegressionSample, as_point
from app.neighbors.ordering import euclidean_ordering, outward_ordering


def knn_regress(
    x: ArrayLike,
    sample: RegressionSample,
    k: int,
    mode: Union[EstimationMode, str] = EstimationMode.EUCLIDEAN,
    spec: Optional[DepthSpec] = None,
) -> float:
    """Mean response over the k-neighborhood of x, tied groups kept whole"""
    query = as_point(x, sample.points.shape[1])
    if EstimationMode(mode) == EstimationMode.DEPTH:
        ordering = outward_ordering(query, sample.points, spec)
    else:
        ordering = euclidean_ordering(query, sample.points)
    members = ordering.neighborhood(k).member_indices
    return float(np.mean(sample.responses[members]))
