from .config import settings
from .exceptions import (
    ChecksumMismatchError,
    ComputationError,
    DatasetValidationError,
    DegenerateScaleError,
    DegenerateVolumeError,
    DepthKnnError,
    DimensionMismatchError,
    InsufficientDataError,
    SingularityError,
    UsageError,
    ValidationError,
)
from .linalg import apply_affine, covariance, inverse_sqrt, pooled_covariance
from .rng import RngSeed

__all__ = [
    "settings",
    "DepthKnnError",
    "ValidationError",
    "UsageError",
    "DimensionMismatchError",
    "InsufficientDataError",
    "DatasetValidationError",
    "ChecksumMismatchError",
    "ComputationError",
    "SingularityError",
    "DegenerateScaleError",
    "DegenerateVolumeError",
    "apply_affine",
    "covariance",
    "inverse_sqrt",
    "pooled_covariance",
    "RngSeed",
]
