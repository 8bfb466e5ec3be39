from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.models.depth import DepthKind, DepthSpec
from app.models.neighborhood import k_from_beta


class ClassifierKind(str, Enum):
    DKNN = "dknn"
    KNN = "knn"
    KNNAFF = "knnaff"
    LDA = "lda"
    QDA = "qda"
    DD = "dd"
    CONSTANT = "constant"

    @property
    def uses_neighbors(self) -> bool:
        return self in (ClassifierKind.DKNN, ClassifierKind.KNN, ClassifierKind.KNNAFF)


_DEPTH_TAGS = {
    DepthKind.HALFSPACE: "H",
    DepthKind.SIMPLICIAL: "S",
    DepthKind.MAHALANOBIS: "M",
    DepthKind.PROJECTION: "P",
}


class ClassifierConfig(BaseModel):
    """
    Which classifier to build and with which tuning. Neighbor methods take
    either k or beta = k/n; DD takes a degree and, when smoothed, the
    logistic sharpness t and the number of random starts.
    """

    model_config = ConfigDict(frozen=True)

    method: ClassifierKind
    k: Optional[int] = Field(default=None, ge=1)
    beta: Optional[float] = Field(default=None, gt=0, le=1)
    depth: DepthSpec = Field(default_factory=DepthSpec)
    degree: int = Field(default=1, ge=1, le=3)
    smoothed: bool = False
    t: float = Field(default_factory=lambda: settings.DD_SMOOTH_T, gt=0)
    starts: int = Field(default_factory=lambda: settings.DD_SMOOTH_STARTS, ge=1)
    seed: int = Field(default=0, ge=0)
    label: int = Field(default=0, ge=0, le=1)
    name: Optional[str] = None

    @model_validator(mode="after")
    def _check_combination(self) -> "ClassifierConfig":
        if self.method == ClassifierKind.DD and not self.smoothed and self.degree > 2:
            raise ValueError("exact DD-classifiers support degree 1 or 2 only")
        if self.k is not None and self.beta is not None:
            raise ValueError("give k or beta, not both")
        return self

    def display_name(self) -> str:
        """Short roster label such as 'DH-kNN(b=0.05)' or 'DDsmM(m=3)'"""
        if self.name:
            return self.name
        tag = _DEPTH_TAGS[self.depth.kind]
        tuning = f"k={self.k}" if self.k is not None else f"b={self.beta}" if self.beta else "k=cv"
        if self.method == ClassifierKind.DKNN:
            return f"D{tag}-kNN({tuning})"
        if self.method == ClassifierKind.KNN:
            return f"kNN({tuning})"
        if self.method == ClassifierKind.KNNAFF:
            return f"kNNaff({tuning})"
        if self.method == ClassifierKind.DD:
            prefix = "DDsm" if self.smoothed else "DD"
            return f"{prefix}{tag}(m={self.degree})"
        if self.method == ClassifierKind.CONSTANT:
            return f"constant-{self.label}"
        return self.method.value.upper()

    def resolve_k(self, n: int) -> int:
        """Neighbor count for a training sample of size n"""
        if self.k is not None:
            if self.k > n:
                raise ValidationError(f"k = {self.k} exceeds the training size {n}")
            return self.k
        if self.beta is not None:
            return k_from_beta(self.beta, n)
        raise ValidationError(f"{self.display_name()} needs k or beta")


class PosteriorEstimate(BaseModel):
    """Estimate of eta(x) = P[Y = 1 | X = x]"""

    model_config = ConfigDict(frozen=True)

    eta: float = Field(ge=0.0, le=1.0)
    class1_count: int = Field(ge=0)
    realized_count: int = Field(ge=1)


@dataclass(frozen=True)
class DDPoint:
    """Depths of one point with respect to the class-0 and class-1 subsamples"""

    d0: float
    d1: float


class VoteStage(str, Enum):
    MAJORITY = "majority"
    EXPANDED = "expanded"
    COIN = "coin"


@dataclass(frozen=True)
class VoteOutcome:
    label: int
    class0: int  # counts in the neighborhood itself
    class1: int
    stage: VoteStage
    groups_used: int  # groups looked at, expansion included


@dataclass(frozen=True, eq=False)
class GaussianModel:
    """Plug-in Gaussian rule: class means, covariances and priors"""

    means: tuple[NDArray[np.float64], NDArray[np.float64]]
    covariances: tuple[NDArray[np.float64], NDArray[np.float64]]
    priors: tuple[float, float]
    pooled: bool

    def __post_init__(self):
        if not all(p > 0 for p in self.priors) or abs(sum(self.priors) - 1.0) > 1e-12:
            raise ValidationError(f"priors must be positive and sum to 1, got {self.priors}")


@dataclass(frozen=True, eq=False)
class DDModel:
    """Polynomial r(d) = sum_j c_j d^j through the origin in the DD-plot"""

    depth: DepthSpec
    coefficients: NDArray[np.float64]
    training_errors: int
    smoothed: bool
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return int(self.coefficients.size)

    def curve(self, d0: NDArray[np.float64]) -> NDArray[np.float64]:
        powers = np.power.outer(np.asarray(d0, dtype=float), np.arange(1, self.degree + 1))
        return powers @ self.coefficients
