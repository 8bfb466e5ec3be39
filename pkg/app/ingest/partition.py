from typing import Mapping, Union

import numpy as np

from app.core.exceptions import ValidationError
from app.core.rng import RngSeed, as_seed
from app.models.sample import LabeledSample


def partition_indices(
    labels: np.ndarray, class_sizes: Mapping[int, int], seed: Union[RngSeed, int, None] = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Stratified split: class_sizes[c] indices of class c go to training, all
    remaining indices to test. Both index arrays come back sorted.
    """
    rng = as_seed(seed).child("partition").generator()
    train = []
    for label in (0, 1):
        members = np.flatnonzero(labels == label)
        size = int(class_sizes.get(label, 0))
        if size < 0 or size > members.size:
            raise ValidationError(
                f"cannot draw {size} training points from class {label} of size {members.size}"
            )
        train.append(rng.choice(members, size=size, replace=False))
    train_idx = np.sort(np.concatenate(train))
    test_idx = np.setdiff1d(np.arange(labels.size), train_idx)
    return train_idx, test_idx


def partition(
    sample: LabeledSample, class_sizes: Mapping[int, int], seed: Union[RngSeed, int, None] = None
) -> tuple[LabeledSample, LabeledSample]:
    """Stratified random train/test split; the test sample takes everything left over"""
    unknown = set(class_sizes) - {0, 1}
    if unknown:
        raise ValidationError(f"class sizes given for unknown labels {sorted(unknown)}")
    train_idx, test_idx = partition_indices(sample.labels, class_sizes, seed)
    if test_idx.size == 0:
        raise ValidationError("partition leaves an empty test sample")
    return sample.subset(train_idx), sample.subset(test_idx)
