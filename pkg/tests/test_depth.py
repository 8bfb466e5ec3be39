import itertools
import math

import numpy as np
import pydantic
import pytest

from app.core.exceptions import DegenerateScaleError, DimensionMismatchError, SingularityError, ValidationError
from app.depth import (
    depth_all,
    halfspace_depth,
    mahalanobis_depth,
    projection_depth,
    region_by_content,
    region_by_level,
    sample_depths,
    simplicial_depth,
)
from app.depth.factory import DepthFactory, get_depth
from app.depth.regions import group_levels
from app.models.depth import DepthKind, DepthSpec
from app.models.sample import AffineMap

EXACT_2D_KINDS = (DepthKind.HALFSPACE, DepthKind.SIMPLICIAL, DepthKind.MAHALANOBIS)


def brute_force_halfspace(x, points):
    """Minimum closed-halfplane count over normals to each X_i - x, nudged by +-1e-7 rad"""
    vectors = points - x
    best = len(points)
    for v in vectors:
        if not np.any(v):
            continue
        base = math.atan2(v[1], v[0])
        for turn in (math.pi / 2, -math.pi / 2):
            for nudge in (0.0, 1e-7, -1e-7):
                angle = base + turn + nudge
                u = np.array([math.cos(angle), math.sin(angle)])
                best = min(best, int(np.count_nonzero(vectors @ u >= 0)))
    return best / len(points)


def literal_simplicial(x, points):
    """Fraction of all (d+1)-subsets whose closed simplex contains x, by barycentric solve"""
    n, d = points.shape
    inside = 0
    total = 0
    for subset in itertools.combinations(range(n), d + 1):
        vertices = points[list(subset)]
        system = np.vstack([vertices.T, np.ones(d + 1)])
        weights = np.linalg.solve(system, np.append(x, 1.0))
        inside += int(np.all(weights >= -1e-10))
        total += 1
    return inside / total


class TestHalfspaceDepth:
    def test_univariate(self):
        assert halfspace_depth([3.0], [1, 2, 3, 4, 5]) == pytest.approx(3 / 5)

    def test_triangle_vertex(self, triangle):
        assert halfspace_depth([0.0, 0.0], triangle) == pytest.approx(1 / 3)

    def test_outside_hull(self, triangle):
        assert halfspace_depth([5.0, 5.0], triangle) == 0.0

    @pytest.mark.parametrize("seed", range(100))
    def test_sweep_matches_pairwise_normal_oracle(self, seed):
        rng = np.random.default_rng(seed)
        points = rng.standard_normal((40, 2))
        for x in (rng.standard_normal(2) * 0.5, points[3], rng.standard_normal(2) * 2):
            assert halfspace_depth(x, points) == pytest.approx(brute_force_halfspace(x, points), abs=1e-12)

    def test_empty_sample(self):
        with pytest.raises(ValidationError):
            halfspace_depth([0.0, 0.0], np.empty((0, 2)))

    def test_dimension_mismatch(self, triangle):
        with pytest.raises(DimensionMismatchError):
            halfspace_depth([0.0, 0.0, 0.0], triangle)

    def test_approximation_is_an_upper_bound_in_three_dimensions(self, rng):
        points = rng.standard_normal((30, 3))
        x = np.zeros(3)
        approx = halfspace_depth(x, points, DepthSpec(directions=200))
        finer = halfspace_depth(x, points, DepthSpec(directions=2000))
        assert 0.0 <= finer <= approx <= 1.0


class TestSimplicialDepth:
    def test_interior_of_single_triangle(self):
        assert simplicial_depth([0.5, 0.5], [[0, 0], [2, 0], [0, 2]]) == 1.0

    def test_exterior_point(self):
        assert simplicial_depth([5.0, 5.0], [[0, 0], [2, 0], [0, 2]]) == 0.0

    def test_square_center_on_diagonals(self):
        square = [[0, 0], [1, 0], [1, 1], [0, 1]]
        assert simplicial_depth([0.5, 0.5], square) == pytest.approx(1.0)

    def test_too_few_points(self):
        assert simplicial_depth([0.0, 0.0], [[0, 0], [1, 1]]) == 0.0

    @pytest.mark.parametrize("seed", range(20))
    def test_bivariate_counting_matches_literal_subsets(self, seed):
        rng = np.random.default_rng(seed)
        points = rng.standard_normal((12, 2))
        for x in (np.zeros(2), rng.standard_normal(2), points[0] * 0.3):
            assert simplicial_depth(x, points) == pytest.approx(literal_simplicial(x, points), abs=1e-12)

    def test_enumeration_matches_literal_subsets_in_three_dimensions(self, rng):
        points = rng.standard_normal((10, 3))
        x = np.array([0.1, -0.2, 0.05])
        assert simplicial_depth(x, points) == pytest.approx(literal_simplicial(x, points), abs=1e-12)

    def test_monte_carlo_beyond_enumeration_cap(self, rng):
        points = rng.standard_normal((14, 3))
        x = np.zeros(3)
        exact = simplicial_depth(x, points)
        spec = DepthSpec(kind=DepthKind.SIMPLICIAL, max_enumeration=900, seed=3)
        sampled = simplicial_depth(x, points, spec)
        assert sampled == pytest.approx(exact, abs=0.06)
        DepthFactory.clear_instances()
        assert simplicial_depth(x, points, spec) == sampled

    def test_univariate_segments(self):
        # 10 segments over 5 points; those missing 3 have both ends on one side
        assert simplicial_depth([3.0], [1, 2, 3, 4, 5]) == pytest.approx(8 / 10)


class TestMahalanobisDepth:
    CROSS = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])  # covariance 2/3 I

    def test_mean_has_depth_one(self):
        assert mahalanobis_depth([0.0, 0.0], self.CROSS) == pytest.approx(1.0)

    def test_unit_squared_distance(self):
        assert mahalanobis_depth([math.sqrt(2 / 3), 0.0], self.CROSS) == pytest.approx(0.5)

    def test_squared_distance_three(self):
        assert mahalanobis_depth([0.0, math.sqrt(2.0)], self.CROSS) == pytest.approx(0.25)

    def test_singular_covariance(self):
        with pytest.raises(SingularityError):
            mahalanobis_depth([0.0, 0.0], [[0, 0], [1, 1], [2, 2], [3, 3]])


class TestProjectionDepth:
    def test_median_has_depth_one(self):
        assert projection_depth([0.0], [-1, 0, 1]) == pytest.approx(1.0)

    def test_one_mad_away(self):
        assert projection_depth([1.0], [-1, 0, 1]) == pytest.approx(0.5)

    def test_decreases_along_rays_from_the_median(self, rng):
        points = rng.standard_normal((500, 2))
        median = np.median(points, axis=0)
        for angle in np.linspace(0, 2 * np.pi, 8, endpoint=False):
            ray = np.array([math.cos(angle), math.sin(angle)])
            values = [projection_depth(median + t * ray, points) for t in (0.5, 1.0, 1.5, 2.0, 3.0)]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_zero_mad(self):
        with pytest.raises(DegenerateScaleError):
            projection_depth([0.0], [1, 1, 1, 2])


class TestDepthAll:
    @pytest.mark.parametrize("kind", list(DepthKind))
    def test_vector_call_equals_scalar_calls(self, kind, rng):
        points = rng.standard_normal((20, 2))
        spec = DepthSpec(kind=kind)
        values = depth_all(points, points, spec)
        scalar = [get_depth(spec).depth(p, points) for p in points]
        np.testing.assert_allclose(values, scalar, atol=1e-12)

    @pytest.mark.parametrize("kind", list(DepthKind))
    def test_reference_order_is_irrelevant(self, kind, rng):
        points = rng.standard_normal((25, 2))
        queries = rng.standard_normal((5, 2))
        spec = DepthSpec(kind=kind)
        shuffled = points[rng.permutation(25)]
        np.testing.assert_allclose(depth_all(queries, points, spec), depth_all(queries, shuffled, spec), atol=1e-12)

    def test_single_query(self, rng):
        points = rng.standard_normal((15, 2))
        assert depth_all([points[0]], points)[0] == pytest.approx(halfspace_depth(points[0], points))


class TestDepthProperties:
    @pytest.mark.parametrize("kind", EXACT_2D_KINDS)
    def test_affine_invariance(self, kind, rng):
        spec = DepthSpec(kind=kind)
        points = rng.standard_normal((30, 2))
        queries = rng.standard_normal((6, 2))
        for _ in range(5):
            affine = AffineMap(rng.standard_normal((2, 2)) + 1.5 * np.eye(2), rng.standard_normal(2))
            before = depth_all(queries, points, spec)
            after = depth_all(affine.apply_points(queries), affine.apply_points(points), spec)
            np.testing.assert_allclose(after, before, atol=1e-9)

    @pytest.mark.parametrize("kind", [DepthKind.HALFSPACE, DepthKind.MAHALANOBIS, DepthKind.PROJECTION])
    def test_center_of_symmetry_is_deepest(self, kind, rng):
        half = rng.standard_normal((30, 2))
        theta = np.array([0.5, -1.0])
        symmetric = np.vstack([half, 2 * theta - half])
        spec = DepthSpec(kind=kind)
        center = get_depth(spec).depth(theta, symmetric)
        queries = np.vstack([symmetric, rng.standard_normal((20, 2))])
        assert np.all(depth_all(queries, symmetric, spec) <= center + 1e-12)

    @pytest.mark.parametrize("kind", list(DepthKind))
    def test_vanishes_at_infinity(self, kind, rng):
        points = rng.standard_normal((30, 2))
        diameter = float(np.ptp(points, axis=0).max())
        far = 1e6 * diameter * np.array([0.6, 0.8])
        value = get_depth(DepthSpec(kind=kind)).depth(far, points)
        if kind in (DepthKind.HALFSPACE, DepthKind.SIMPLICIAL):
            assert value == 0.0
        else:
            assert value < 1e-9


class TestRegions:
    def test_level_zero_is_everything(self, rng):
        points = rng.standard_normal((20, 2))
        assert region_by_level(points, alpha=0.0).size == 20

    def test_level_above_maximum_is_empty(self, rng):
        points = rng.standard_normal((20, 2))
        top = sample_depths(points).max()
        assert region_by_level(points, alpha=top + 0.01).size == 0

    @pytest.mark.parametrize("kind", list(DepthKind))
    def test_regions_are_nested(self, kind, rng):
        points = rng.standard_normal((30, 2))
        spec = DepthSpec(kind=kind)
        levels = np.unique(sample_depths(points, spec))
        regions = [region_by_level(points, spec, float(a)).members() for a in levels]
        for outer, inner in zip(regions, regions[1:]):
            assert inner <= outer

    def test_negative_level(self, triangle):
        with pytest.raises(ValidationError):
            region_by_level(triangle, alpha=-0.1)

    def test_full_content(self, rng):
        points = rng.standard_normal((20, 2))
        assert region_by_content(points, beta=1.0).size == 20

    def test_content_without_ties(self):
        points = [[0.0], [1.0], [3.0], [7.0], [15.0]]  # distinct distances to the mean 5.2
        region = region_by_content(points, DepthSpec(kind=DepthKind.MAHALANOBIS), beta=0.4)
        assert region.members() == {2, 3}

    def test_content_keeps_tied_cut_whole(self):
        angles = np.deg2rad([90.0, 210.0, 330.0])
        points = np.vstack([[0.0, 0.0], np.column_stack([np.cos(angles), np.sin(angles)])])
        region = region_by_content(points, DepthSpec(kind=DepthKind.MAHALANOBIS), beta=0.5)
        assert region.size == 4 > math.ceil(0.5 * 4)

    def test_content_range(self, triangle):
        with pytest.raises(ValidationError):
            region_by_content(triangle, beta=0.0)

    def test_group_levels_merges_float_noise(self):
        groups, levels = group_levels(np.array([0.5, 0.25, 0.5 + 1e-16, 0.1]))
        assert [g.tolist() for g in groups] == [[0, 2], [1], [3]]
        np.testing.assert_allclose(levels, [0.5, 0.25, 0.1])

    @pytest.mark.parametrize("kind", [DepthKind.MAHALANOBIS, DepthKind.PROJECTION, DepthKind.HALFSPACE])
    def test_region_bounds_contain_the_region(self, kind, rng):
        points = rng.standard_normal((40, 2))
        depth = get_depth(DepthSpec(kind=kind))
        level = float(np.median(depth.depth_all(points, points)))
        low, high = depth.region_bounds(points, level)
        queries = rng.uniform(-4, 4, size=(4000, 2))
        inside = queries[depth.depth_all(queries, points) >= level]
        assert np.all(inside >= low - 1e-9) and np.all(inside <= high + 1e-9)


class TestDepthSpec:
    def test_direction_floor(self):
        with pytest.raises(pydantic.ValidationError):
            DepthSpec(directions=50)

    def test_exactness(self):
        assert DepthSpec(kind=DepthKind.HALFSPACE).is_exact(2)
        assert not DepthSpec(kind=DepthKind.HALFSPACE).is_exact(3)
        assert DepthSpec(kind=DepthKind.MAHALANOBIS).is_exact(5)

    def test_factory_reuses_instances(self):
        spec = DepthSpec(kind=DepthKind.PROJECTION)
        assert get_depth(spec) is get_depth(spec)
        assert DepthFactory.get_instance_count() == 1
