from .classification import (
    ClassifierConfig,
    ClassifierKind,
    DDModel,
    DDPoint,
    GaussianModel,
    PosteriorEstimate,
    VoteOutcome,
    VoteStage,
)
from .dataset import DatasetDescriptor, DatasetFile, DatasetName
from .depth import DepthKind, DepthRegion, DepthSpec
from .estimation import DensityEstimate, EstimationMode, VolumeEstimate
from .experiment import (
    BenchmarkConfig,
    ClassifierSummary,
    CrossValidationResult,
    ExperimentReport,
    ReplicationRecord,
    RiskEstimate,
    SetupId,
)
from .manifest import RunManifest
from .neighborhood import DepthNeighborhood, OutwardOrdering, SymmetrizedSample, k_from_beta
from .sample import AffineMap, LabeledSample, Point, RegressionSample, as_point, as_points

__all__ = [
    "Point",
    "LabeledSample",
    "RegressionSample",
    "AffineMap",
    "as_point",
    "as_points",
    "DepthKind",
    "DepthSpec",
    "DepthRegion",
    "SymmetrizedSample",
    "OutwardOrdering",
    "DepthNeighborhood",
    "k_from_beta",
    "ClassifierKind",
    "ClassifierConfig",
    "PosteriorEstimate",
    "DDPoint",
    "DDModel",
    "GaussianModel",
    "VoteOutcome",
    "VoteStage",
    "EstimationMode",
    "VolumeEstimate",
    "DensityEstimate",
    "SetupId",
    "BenchmarkConfig",
    "ReplicationRecord",
    "ClassifierSummary",
    "ExperimentReport",
    "RiskEstimate",
    "CrossValidationResult",
    "DatasetName",
    "DatasetFile",
    "DatasetDescriptor",
    "RunManifest",
]
