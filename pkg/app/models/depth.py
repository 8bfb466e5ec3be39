from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings

# Depth values are plain floats: [0, 1] for halfspace/simplicial depth,
# (0, 1] for Mahalanobis/projection depth.
DepthValue = float


class DepthKind(str, Enum):
    HALFSPACE = "halfspace"
    SIMPLICIAL = "simplicial"
    MAHALANOBIS = "mahalanobis"
    PROJECTION = "projection"


class DepthSpec(BaseModel):
    """Choice of depth function plus its algorithmic parameters"""

    model_config = ConfigDict(frozen=True)

    kind: DepthKind = DepthKind.HALFSPACE
    directions: int = Field(
        default_factory=lambda: settings.DEFAULT_DIRECTIONS,
        ge=100,
        description="Direction count for approximate halfspace (d >= 3) and projection depth",
    )
    max_enumeration: int = Field(
        default_factory=lambda: settings.MAX_ENUMERATION,
        ge=2,
        description="Largest number of simplices enumerated exactly (d >= 3)",
    )
    seed: int = Field(default=0, ge=0, description="Monte Carlo simplicial depth stream")

    def is_exact(self, d: int) -> bool:
        """Whether depth values are exact (hence exactly affine invariant) in dimension d"""
        if self.kind == DepthKind.HALFSPACE:
            return d <= 2
        if self.kind == DepthKind.SIMPLICIAL:
            return d <= 2
        if self.kind == DepthKind.MAHALANOBIS:
            return True
        return d == 1

    def label(self) -> str:
        return self.kind.value


@dataclass(frozen=True, eq=False)
class DepthRegion:
    """Sample indices whose depth is at least `level`"""

    level: float
    member_indices: NDArray[np.int64]

    @property
    def size(self) -> int:
        return int(self.member_indices.size)

    def members(self) -> frozenset[int]:
        return frozenset(int(i) for i in self.member_indices)
