"""
Nearest-neighbor regression and density estimation, Euclidean or depth-based
"""
from .density import knn_density, knn_density_estimate
from .regression import knn_regress
from .volume import euclidean_ball_volume, neighborhood_volume, unit_ball_volume

__all__ = [
    "knn_regress",
    "knn_density",
    "knn_density_estimate",
    "neighborhood_volume",
    "euclidean_ball_volume",
    "unit_ball_volume",
]
