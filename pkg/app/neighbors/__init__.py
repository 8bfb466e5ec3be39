"""
Symmetrization about a query point, x-outward orderings and depth-based
neighborhoods
"""
from .ordering import (
    depth_neighborhood,
    euclidean_ordering,
    outward_ordering,
    symmetrized_depths,
)
from .symmetrize import symmetrize

__all__ = [
    "symmetrize",
    "symmetrized_depths",
    "outward_ordering",
    "depth_neighborhood",
    "euclidean_ordering",
]
