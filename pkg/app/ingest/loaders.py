"""
Loaders for the Ripley synthetic and blood transfusion datasets
"""
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from app.core.exceptions import DatasetValidationError
from app.core.logging_config import get_logger
from app.ingest.checksums import verify_file
from app.ingest.datasets import ripley_descriptor, transfusion_descriptor
from app.models.dataset import DatasetFile
from app.models.sample import LabeledSample

logger = get_logger("app.ingest.loaders")

PathLike = Union[str, Path]

# Header prefixes of the UCI transfusion file, e.g. "Recency (months)"
TRANSFUSION_PREFIXES = {
    "recency": "recency",
    "frequency": "frequency",
    "monetary": "monetary",
    "time": "time",
    "whether": "donated",
    "donated": "donated",
}


def _read_table(path: Path, **kwargs) -> pd.DataFrame:
    if not path.exists():
        raise DatasetValidationError(f"dataset file not found: {path}")
    try:
        return pd.read_csv(path, **kwargs)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DatasetValidationError(f"could not parse {path}: {e}") from e


def _labels(frame: pd.DataFrame, column: str, path: Path) -> np.ndarray:
    labels = pd.to_numeric(frame[column], errors="coerce").to_numpy()
    if np.any(np.isnan(labels)) or not np.all(np.isin(labels, (0, 1))):
        bad = sorted(set(frame[column].astype(str)) - {"0", "1", "0.0", "1.0"})
        raise DatasetValidationError(f"{path}: label column '{column}' must hold 0/1, found {bad[:5]}")
    return labels.astype(np.int64)


def _features(frame: pd.DataFrame, columns, path: Path) -> np.ndarray:
    values = frame[list(columns)].apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    if not np.all(np.isfinite(values)):
        raise DatasetValidationError(f"{path}: non-numeric or missing feature values")
    return values


def _check_rows(frame: pd.DataFrame, spec: DatasetFile, path: Path) -> None:
    if len(frame) != spec.rows:
        raise DatasetValidationError(f"{path}: expected {spec.rows} observations, found {len(frame)}")


def _load_ripley_file(path: PathLike, spec: DatasetFile, verify: bool) -> LabeledSample:
    path = Path(path)
    descriptor = ripley_descriptor()
    if verify and path.exists():
        verify_file(path, spec.sha256)
    frame = _read_table(path, sep=r"\s+")
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    expected = [*descriptor.feature_columns, descriptor.label_column]
    missing = [c for c in expected if c not in frame.columns]
    if missing:
        raise DatasetValidationError(f"{path}: expected columns {expected}, missing {missing}")
    _check_rows(frame, spec, path)
    sample = LabeledSample(
        _features(frame, descriptor.feature_columns, path), _labels(frame, descriptor.label_column, path)
    )
    n0, n1 = sample.class_counts()
    if n0 != n1:
        raise DatasetValidationError(f"{path}: classes must be balanced, found {n0} and {n1}")
    return sample


def load_ripley(
    train_path: PathLike, test_path: PathLike, verify: bool = True
) -> tuple[LabeledSample, LabeledSample]:
    """Official split: 250 training and 1000 test points, both balanced"""
    train_spec, test_spec = ripley_descriptor().files
    train = _load_ripley_file(train_path, train_spec, verify)
    test = _load_ripley_file(test_path, test_spec, verify)
    logger.info(f"Loaded Ripley synthetic data: {train.n} training, {test.n} test points")
    return train, test


def _transfusion_columns(frame: pd.DataFrame, path: Path) -> pd.DataFrame:
    renamed = {}
    for column in frame.columns:
        key = str(column).strip().lower()
        for prefix, role in TRANSFUSION_PREFIXES.items():
            if key.startswith(prefix):
                renamed[column] = role
                break
    frame = frame.rename(columns=renamed)
    required = ["recency", "frequency", "monetary", "time", "donated"]
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise DatasetValidationError(f"{path}: missing transfusion columns {missing}")
    return frame


def load_transfusion(path: PathLike, verify: bool = True) -> LabeledSample:
    """
    748 donors with Recency, Frequency and Time; the monetary column is
    checked to be proportional to Frequency and then dropped.
    """
    path = Path(path)
    descriptor = transfusion_descriptor()
    (spec,) = descriptor.files
    if verify and path.exists():
        verify_file(path, spec.sha256)
    frame = _transfusion_columns(_read_table(path), path)
    _check_rows(frame, spec, path)
    frequency = _features(frame, ["frequency"], path)[:, 0]
    monetary = _features(frame, ["monetary"], path)[:, 0]
    if np.any(frequency <= 0):
        raise DatasetValidationError(f"{path}: Frequency must be positive")
    ratios = monetary / frequency
    if not np.allclose(ratios, ratios[0], rtol=1e-9, atol=0.0):
        raise DatasetValidationError(f"{path}: monetary volume is not proportional to Frequency")
    sample = LabeledSample(
        _features(frame, descriptor.feature_columns, path), _labels(frame, descriptor.label_column, path)
    )
    n0, n1 = sample.class_counts()
    if descriptor.class_counts and (n0, n1) != (descriptor.class_counts[0], descriptor.class_counts[1]):
        raise DatasetValidationError(
            f"{path}: expected {descriptor.class_counts[1]} donors and "
            f"{descriptor.class_counts[0]} non-donors, found {n1} and {n0}"
        )
    logger.info(f"Loaded transfusion data: {sample.n} donors, {n1} gave blood (monetary dropped, ratio {ratios[0]:g})")
    return sample

