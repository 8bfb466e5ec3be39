"""
Bivariate (or general d) populations with a sampler and an exact density.
"""
from abc import ABC, abstractmethod
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import multivariate_normal, multivariate_t

from app.core.exceptions import ValidationError
from app.core.linalg import checked_eigh, symmetric_sqrt
from app.models.sample import AffineMap, as_points


class Population(ABC):
    d: int

    @abstractmethod
    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        pass

    @abstractmethod
    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        pass


class GaussianPopulation(Population):
    def __init__(self, mean: ArrayLike, covariance: ArrayLike):
        self.mean = np.asarray(mean, dtype=float)
        self.covariance = np.asarray(covariance, dtype=float)
        checked_eigh(self.covariance, what="population covariance")
        self.d = self.mean.size
        self._root = symmetric_sqrt(self.covariance)

    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        return self.mean + rng.standard_normal((n, self.d)) @ self._root

    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        return np.atleast_1d(multivariate_normal(self.mean, self.covariance).pdf(as_points(points, self.d)))


class EllipticalCauchyPopulation(Population):
    """Multivariate t with one degree of freedom: mu + Sigma^{1/2} Z / |W|"""

    def __init__(self, location: ArrayLike, scatter: ArrayLike):
        self.location = np.asarray(location, dtype=float)
        self.scatter = np.asarray(scatter, dtype=float)
        checked_eigh(self.scatter, what="population scatter")
        self.d = self.location.size
        self._root = symmetric_sqrt(self.scatter)

    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        z = rng.standard_normal((n, self.d))
        w = np.abs(rng.standard_normal(n))
        return self.location + (z @ self._root) / w[:, None]

    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        dist = multivariate_t(loc=self.location, shape=self.scatter, df=1)
        return np.atleast_1d(dist.pdf(as_points(points, self.d)))


class MixturePopulation(Population):
    def __init__(self, components: Sequence[Population], weights: Optional[Sequence[float]] = None):
        if not components:
            raise ValidationError("a mixture needs at least one component")
        self.components = list(components)
        self.d = self.components[0].d
        count = len(self.components)
        self.weights = np.full(count, 1.0 / count) if weights is None else np.asarray(weights, dtype=float)
        if self.weights.size != count or abs(self.weights.sum() - 1.0) > 1e-12 or np.any(self.weights < 0):
            raise ValidationError("mixture weights must be non-negative and sum to 1")

    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        which = rng.choice(len(self.components), size=n, p=self.weights)
        out = np.empty((n, self.d))
        for index, component in enumerate(self.components):
            mask = which == index
            out[mask] = component.sample(int(mask.sum()), rng)
        return out

    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        return sum(w * c.pdf(points) for w, c in zip(self.weights, self.components))


class HalfMoonPopulation(Population):
    """
    (U, V) with U ~ Unif(-1, 1) and V | U = u ~ Unif(1 - u^2, 2(1 - u^2)),
    optionally pushed through an affine map. Density 1 / (2 (1 - u^2)) on
    the moon, divided by |det A| after the map.
    """

    d = 2

    def __init__(self, affine: Optional[AffineMap] = None):
        self.affine = affine

    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        u = rng.uniform(-1.0, 1.0, n)
        base = 1.0 - u**2
        v = rng.uniform(base, 2.0 * base)
        moon = np.column_stack([u, v])
        return moon if self.affine is None else self.affine.apply_points(moon)

    def in_support(self, moon: NDArray[np.float64]) -> NDArray[np.bool_]:
        u, v = moon[:, 0], moon[:, 1]
        base = 1.0 - u**2
        return (np.abs(u) < 1.0) & (v >= base) & (v <= 2.0 * base)

    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, 2)
        jacobian = 1.0
        if self.affine is not None:
            array = self.affine.inverse().apply_points(array)
            jacobian = abs(np.linalg.det(self.affine.matrix))
        inside = self.in_support(array)
        density = np.zeros(array.shape[0])
        density[inside] = 1.0 / (2.0 * (1.0 - array[inside, 0] ** 2)) / jacobian
        return density


class RingPopulation(Population):
    """Uniform on the annulus r_inner <= |x| <= r_outer in R^2"""

    d = 2

    def __init__(self, r_inner: float, r_outer: float):
        if not 0 <= r_inner < r_outer:
            raise ValidationError("ring radii must satisfy 0 <= r_inner < r_outer")
        self.r_inner = r_inner
        self.r_outer = r_outer

    @property
    def area(self) -> float:
        return np.pi * (self.r_outer**2 - self.r_inner**2)

    def sample(self, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
        radius = np.sqrt(rng.uniform(self.r_inner**2, self.r_outer**2, n))
        angle = rng.uniform(0.0, 2.0 * np.pi, n)
        return np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])

    def pdf(self, points: ArrayLike) -> NDArray[np.float64]:
        norms = np.linalg.norm(as_points(points, 2), axis=1)
        inside = (norms >= self.r_inner) & (norms <= self.r_outer)
        return np.where(inside, 1.0 / self.area, 0.0)
