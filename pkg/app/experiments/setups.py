"""
The six bivariate simulation setups, with fair-coin labels.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from app.core.exceptions import ValidationError
from app.core.rng import RngSeed, as_seed
from app.experiments.populations import (
    EllipticalCauchyPopulation,
    GaussianPopulation,
    HalfMoonPopulation,
    MixturePopulation,
    Population,
    RingPopulation,
)
from app.models.experiment import SetupId
from app.models.sample import AffineMap, LabeledSample

SIGMA_0 = np.array([[1.0, 1.0], [1.0, 4.0]])
MU_0 = np.array([0.0, 0.0])
MU_1 = np.array([1.0, 1.0])
FLAT_SIGMA = np.diag([25.0, 1.0])
MOON_MAP = AffineMap(np.array([[1.0, 0.5], [0.5, -1.0]]), np.array([-0.5, 2.0]))
RING_RADII = ((1.0, 2.0), (1.75, 2.5))


@dataclass(frozen=True)
class SimulationSetup:
    id: SetupId
    population0: Population
    population1: Population
    prior1: float = 0.5

    def posterior(self, points: np.ndarray) -> np.ndarray:
        """eta(x) = P[Y = 1 | X = x]; 1/2 where both densities vanish"""
        f0 = (1.0 - self.prior1) * self.population0.pdf(points)
        f1 = self.prior1 * self.population1.pdf(points)
        total = f0 + f1
        return np.divide(f1, total, out=np.full_like(total, 0.5), where=total > 0)


@lru_cache(maxsize=None)
def get_setup(setup_id: Union[SetupId, str]) -> SimulationSetup:
    setup_id = SetupId(setup_id)
    if setup_id == SetupId.GAUSSIAN:
        return SimulationSetup(
            setup_id, GaussianPopulation(MU_0, SIGMA_0), GaussianPopulation(MU_1, 4 * SIGMA_0)
        )
    if setup_id == SetupId.CAUCHY:
        return SimulationSetup(
            setup_id,
            EllipticalCauchyPopulation(MU_0, SIGMA_0),
            EllipticalCauchyPopulation(MU_1, 4 * SIGMA_0),
        )
    if setup_id == SetupId.FLAT:
        return SimulationSetup(
            setup_id, GaussianPopulation(MU_0, FLAT_SIGMA), GaussianPopulation(MU_1, FLAT_SIGMA)
        )
    if setup_id == SetupId.HALFMOONS:
        return SimulationSetup(setup_id, HalfMoonPopulation(), HalfMoonPopulation(MOON_MAP))
    if setup_id == SetupId.RINGS:
        (a0, b0), (a1, b1) = RING_RADII
        return SimulationSetup(setup_id, RingPopulation(a0, b0), RingPopulation(a1, b1))
    class0 = MixturePopulation(
        [GaussianPopulation([0.0, 0.0], SIGMA_0), GaussianPopulation([3.0, 3.0], 4 * SIGMA_0)]
    )
    class1 = MixturePopulation(
        [
            GaussianPopulation([1.5, 1.5], np.diag([4.0, 0.5])),
            GaussianPopulation([4.5, 4.5], np.diag([0.75, 5.0])),
        ]
    )
    return SimulationSetup(setup_id, class0, class1)


def draw(setup: SimulationSetup, n: int, seed: Union[RngSeed, int, None] = None) -> LabeledSample:
    """n labeled points: Bernoulli(prior1) labels, then class-conditional draws"""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    rng = as_seed(seed).generator()
    labels = (rng.random(n) < setup.prior1).astype(np.int64)
    points = np.empty((n, setup.population0.d))
    points[labels == 0] = setup.population0.sample(int(np.sum(labels == 0)), rng)
    points[labels == 1] = setup.population1.sample(int(np.sum(labels == 1)), rng)
    return LabeledSample(points, labels)


def generate(
    setup: Union[SetupId, str, SimulationSetup], n: int, seed: Union[RngSeed, int, None] = None
) -> LabeledSample:
    if not isinstance(setup, SimulationSetup):
        setup = get_setup(setup)
    return draw(setup, n, seed)
