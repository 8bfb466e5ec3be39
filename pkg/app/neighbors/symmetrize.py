import numpy as np
from numpy.typing import ArrayLike

from app.models.neighborhood import SymmetrizedSample
from app.models.sample import as_point, as_points


def symmetrize(x: ArrayLike, points: ArrayLike) -> SymmetrizedSample:
    """Augment the sample with its reflections 2x - X_i through the query x"""
    originals = as_points(points)
    query = as_point(x, originals.shape[1])
    reflected = 2.0 * query - originals
    for array in (query, originals, reflected):
        array.setflags(write=False)
    return SymmetrizedSample(query=query, originals=originals, reflected=reflected)
