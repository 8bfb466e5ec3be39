"""
Shared fixtures: seeded samples, small geometric fixtures and CSV writers.
"""
import csv
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pytest

from app.classifiers.factory import ClassifierFactory
from app.core.config import settings
from app.core.linalg import apply_affine
from app.core.rng import RngSeed
from app.depth.factory import DepthFactory
from app.ingest.fetch import dataset_paths
from app.models.classification import ClassifierConfig, ClassifierKind
from app.models.dataset import DatasetName
from app.models.depth import DepthKind, DepthSpec
from app.models.sample import AffineMap, LabeledSample

# depth-based kNN under each exact depth in the plane, and whitened kNN
AFFINE_INVARIANT_ROSTER = (
    ClassifierConfig(method=ClassifierKind.DKNN, k=8, depth=DepthSpec(kind=DepthKind.HALFSPACE)),
    ClassifierConfig(method=ClassifierKind.DKNN, k=7, depth=DepthSpec(kind=DepthKind.SIMPLICIAL)),
    ClassifierConfig(method=ClassifierKind.DKNN, k=5, depth=DepthSpec(kind=DepthKind.MAHALANOBIS)),
    ClassifierConfig(method=ClassifierKind.KNNAFF, k=7),
)


def write_csv(path: Path, rows: Iterable[Sequence], header: Optional[List[str]] = None) -> Path:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        if header:
            writer.writerow(header)
        writer.writerows(rows)
    return path


def two_gaussians(n: int, seed: int, shift: float = 1.5, d: int = 2) -> LabeledSample:
    """Balanced sample: N(0, I) for class 0, N(shift * 1, I) for class 1"""
    rng = np.random.default_rng(seed)
    labels = np.arange(n) % 2
    points = rng.standard_normal((n, d)) + shift * labels[:, None]
    return LabeledSample(points, labels)


def random_affine_map(rng: np.random.Generator, d: int = 2) -> AffineMap:
    """Rotation, axis scaling in [1/2, 2], rotation and a shift; sometimes a reflection"""
    left, _ = np.linalg.qr(rng.standard_normal((d, d)))
    right, _ = np.linalg.qr(rng.standard_normal((d, d)))
    scales = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=d))
    return AffineMap(left @ np.diag(scales) @ right, rng.normal(0.0, 5.0, size=d))


def assert_affine_invariant(
    config: ClassifierConfig, datasets: int, maps: int, n: int = 100, queries: int = 20
):
    """Predictions before and after a random affine map of training and query points agree exactly"""
    for seed in range(datasets):
        training = two_gaussians(n, seed=seed)
        rng = np.random.default_rng(seed + 5000)
        x = rng.normal(0.75, 1.5, size=(queries, training.d))
        before = ClassifierFactory.create(config).fit(training).predict(x, RngSeed(seed))
        for index in range(maps):
            affine = random_affine_map(rng, training.d)
            mapped = ClassifierFactory.create(config).fit(apply_affine(affine, training))
            np.testing.assert_array_equal(
                mapped.predict(affine.apply_points(x), RngSeed(seed)),
                before,
                err_msg=f"{config.display_name()}: dataset {seed}, map {index}",
            )


@pytest.fixture(autouse=True)
def fresh_depth_instances():
    DepthFactory.clear_instances()
    yield
    DepthFactory.clear_instances()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20130101)


@pytest.fixture
def triangle() -> np.ndarray:
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@pytest.fixture
def gaussian_sample() -> LabeledSample:
    return two_gaussians(60, seed=7)


@pytest.fixture
def csv_writer(tmp_path):
    def _write(name: str, rows, header: Optional[List[str]] = None) -> Path:
        return write_csv(tmp_path / name, rows, header)

    return _write


def require_dataset(name: DatasetName) -> List[Path]:
    """Paths of a real dataset in DATA_DIR; skips the test when any file is missing"""
    paths = dataset_paths(name, settings.DATA_DIR)
    missing = [str(p) for p in paths if not p.exists()]
    if missing:
        pytest.skip(f"dataset files missing from DATA_DIR: {missing}")
    return paths
