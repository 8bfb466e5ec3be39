"""
Deterministic direction sets for the approximate depth modes.
"""
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
from scipy.stats import norm, qmc


@lru_cache(maxsize=32)
def sphere_directions(d: int, count: int) -> NDArray[np.float64]:
    """
    `count` quasi-random unit vectors in R^d: an unscrambled Halton sequence
    pushed through the normal quantile function and normalized. Same
    (d, count) always gives the same array.
    """
    halton = qmc.Halton(d=d, scramble=False)
    cube = halton.random(count + 1)[1:]  # first Halton point is the origin
    gaussian = norm.ppf(cube)
    directions = gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)
    directions.setflags(write=False)
    return directions


@lru_cache(maxsize=32)
def scan_directions(d: int, count: int, signed_axes: bool) -> NDArray[np.float64]:
    """Quasi-random directions plus the coordinate axes (and their negatives)"""
    axes = np.eye(d)
    if signed_axes:
        axes = np.vstack([axes, -axes])
    directions = np.vstack([sphere_directions(d, count), axes])
    directions.setflags(write=False)
    return directions


def half_circle_directions(count: int) -> NDArray[np.float64]:
    """`count` evenly spread unit vectors in R^2 covering angles [0, pi)"""
    angles = np.arange(count) * (np.pi / count)
    return np.column_stack([np.cos(angles), np.sin(angles)])
