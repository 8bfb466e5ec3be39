from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class EstimationMode(str, Enum):
    EUCLIDEAN = "euclidean"
    DEPTH = "depth"


class VolumeEstimate(BaseModel):
    """Lebesgue measure of a neighborhood; standard_error is 0 for exact values"""

    model_config = ConfigDict(frozen=True)

    value: float = Field(gt=0)
    standard_error: float = Field(default=0.0, ge=0)
    exact: bool = True
    draws: int = Field(default=0, ge=0)
    realized_count: int = Field(ge=1, description="sample points inside the neighborhood")


class DensityEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0)
    volume: VolumeEstimate
    numerator: int = Field(ge=1, description="k, or K under depth-mode ties")
    n: int = Field(ge=1)
