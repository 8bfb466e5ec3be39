import math

import numpy as np
import pytest

from app.core.exceptions import DegenerateVolumeError, ValidationError
from app.core.linalg import covariance
from app.estimators.density import knn_density, knn_density_estimate
from app.estimators.regression import knn_regress
from app.estimators.volume import euclidean_ball_volume, neighborhood_volume, unit_ball_volume
from app.models.depth import DepthKind, DepthSpec
from app.models.estimation import EstimationMode
from app.models.sample import RegressionSample
from app.neighbors.ordering import outward_ordering
from app.neighbors.symmetrize import symmetrize

MAHALANOBIS = DepthSpec(kind=DepthKind.MAHALANOBIS)


class TestBallVolumes:
    @pytest.mark.parametrize("d, expected", [(1, 2.0), (2, math.pi), (3, 4 * math.pi / 3)])
    def test_unit_ball(self, d, expected):
        assert unit_ball_volume(d) == pytest.approx(expected)

    def test_disk_area(self):
        assert euclidean_ball_volume(1.5, 2) == pytest.approx(math.pi * 2.25)

    def test_nearest_point_sets_the_radius(self):
        points = [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0]]
        assert neighborhood_volume([0.0, 0.0], points, 1).value == pytest.approx(math.pi)
        assert neighborhood_volume([0.0, 0.0], points, 2).value == pytest.approx(4 * math.pi)

    def test_query_on_the_sample(self):
        with pytest.raises(DegenerateVolumeError):
            neighborhood_volume([0.0, 0.0], [[0.0, 0.0], [1.0, 1.0]], 1)


class TestDepthVolumes:
    def test_univariate_interval(self):
        points = [[-1.0], [2.0], [3.0]]
        assert neighborhood_volume([0.0], points, 1, EstimationMode.DEPTH).value == pytest.approx(2.0)
        estimate = neighborhood_volume([0.0], points, 2, EstimationMode.DEPTH)
        assert estimate.value == pytest.approx(4.0)
        assert estimate.exact

    def test_mahalanobis_region_is_an_ellipse(self, rng):
        points = rng.standard_normal((60, 2)) @ np.array([[1.0, 0.4], [0.0, 0.7]])
        x = np.array([0.2, -0.1])
        k = 15
        level = outward_ordering(x, points, MAHALANOBIS).neighborhood(k).level
        scatter = covariance(symmetrize(x, points).combined)
        expected = math.pi * (1.0 / level - 1.0) * math.sqrt(np.linalg.det(scatter))
        estimate = neighborhood_volume(x, points, k, EstimationMode.DEPTH, MAHALANOBIS, budget=40_000, seed=3)
        assert not estimate.exact
        assert estimate.draws == 40_000
        assert abs(estimate.value - expected) < 3 * estimate.standard_error + 1e-9

    def test_seeded_draws_repeat(self, rng):
        points = rng.standard_normal((30, 2))
        first = neighborhood_volume([0.0, 0.0], points, 8, "depth", budget=5_000, seed=11)
        second = neighborhood_volume([0.0, 0.0], points, 8, "depth", budget=5_000, seed=11)
        assert first.value == second.value
        assert first.standard_error > 0

    def test_standard_error_shrinks_with_the_budget(self, rng):
        points = rng.standard_normal((60, 2))
        x = np.array([0.2, -0.1])
        small = neighborhood_volume(x, points, 15, EstimationMode.DEPTH, MAHALANOBIS, budget=20_000, seed=3)
        large = neighborhood_volume(x, points, 15, EstimationMode.DEPTH, MAHALANOBIS, budget=40_000, seed=3)
        assert large.standard_error / small.standard_error == pytest.approx(1 / math.sqrt(2), rel=0.05)

    def test_high_dimension_needs_a_budget(self, rng):
        points = rng.standard_normal((40, 4))
        with pytest.raises(ValidationError):
            neighborhood_volume(np.zeros(4), points, 10, EstimationMode.DEPTH, MAHALANOBIS)


class TestDensity:
    def test_uniform_square(self):
        points = np.random.default_rng(5).uniform(0, 1, size=(2000, 2))
        assert knn_density([0.5, 0.5], points, 50) == pytest.approx(1.0, abs=0.35)

    def test_uniform_disk(self):
        rng = np.random.default_rng(8)
        radius = np.sqrt(rng.uniform(0, 1, 2000))
        angle = rng.uniform(0, 2 * np.pi, 2000)
        points = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
        turns = rng.uniform(0, 2 * np.pi, 20)
        queries = 0.5 * np.sqrt(rng.uniform(0, 1, (20, 1))) * np.column_stack([np.cos(turns), np.sin(turns)])
        ratios = np.array([knn_density(q, points, 50) for q in queries]) * math.pi
        assert np.median(np.abs(ratios - 1.0)) < 0.3

    @pytest.mark.parametrize(
        "d, mode, spec",
        [(2, EstimationMode.EUCLIDEAN, None), (1, EstimationMode.DEPTH, None), (2, EstimationMode.DEPTH, MAHALANOBIS)],
        ids=["euclidean", "depth-1d", "mahalanobis-2d"],
    )
    def test_translation_leaves_the_estimate_unchanged(self, d, mode, spec, rng):
        points = rng.standard_normal((80, d))
        shift = rng.normal(0.0, 10.0, size=d)
        x = np.full(d, 0.3)
        here = knn_density(x, points, 9, mode, spec, budget=5_000, seed=4)
        moved = knn_density(x + shift, points + shift, 9, mode, spec, budget=5_000, seed=4)
        assert moved == pytest.approx(here, rel=1e-2)

    def test_planar_estimate_integrates_to_about_one(self, rng):
        points = rng.standard_normal((5000, 2))
        step = 0.1
        centers = np.arange(-3.0 + step / 2, 3.0, step)
        total = sum(knn_density([a, b], points, 50) for a in centers for b in centers) * step**2
        assert total == pytest.approx(1.0, abs=0.1)

    def test_euclidean_numerator_is_k(self):
        points = [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0], [5.0, 5.0]]
        estimate = knn_density_estimate([0.0, 0.0], points, 2)
        assert estimate.numerator == 2
        assert estimate.value == pytest.approx(2 / (4 * 4 * math.pi))

    def test_depth_numerator_is_the_realized_count(self):
        points = [[-1.0], [1.0], [3.0]]  # -1 and 1 tie about 0
        estimate = knn_density_estimate([0.0], points, 1, EstimationMode.DEPTH)
        assert estimate.numerator == 2
        assert estimate.value == pytest.approx(2 / (3 * 2.0))


class TestRegression:
    def test_univariate_depth_matches_euclidean(self, rng):
        points = rng.standard_normal((40, 1))
        sample = RegressionSample(points, np.sin(3 * points[:, 0]) + rng.normal(0, 0.1, 40))
        for x in np.linspace(-1.5, 1.5, 7):
            assert knn_regress([x], sample, 6, EstimationMode.DEPTH) == pytest.approx(
                knn_regress([x], sample, 6, EstimationMode.EUCLIDEAN)
            )

    def test_constant_response(self, rng):
        sample = RegressionSample(rng.standard_normal((25, 2)), np.full(25, 4.5))
        assert knn_regress([0.0, 0.0], sample, 5, "depth") == pytest.approx(4.5)

    def test_nearest_neighbor_response(self):
        sample = RegressionSample([[0.0], [10.0]], [1.0, 3.0])
        assert knn_regress([1.0], sample, 1) == 1.0
        assert knn_regress([1.0], sample, 2) == 2.0

    def test_response_count_must_match(self):
        with pytest.raises(ValidationError):
            RegressionSample([[0.0], [1.0]], [1.0])
