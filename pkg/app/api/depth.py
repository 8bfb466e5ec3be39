from typing import List, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field, model_validator

from app.core.logging_config import get_logger
from app.depth.factory import get_depth
from app.models.depth import DepthSpec
from app.models.neighborhood import k_from_beta
from app.models.sample import as_points
from app.neighbors.ordering import outward_ordering

router = APIRouter(tags=["depth"])
logger = get_logger("app.api.depth")


class DepthRequest(BaseModel):
    points: List[List[float]] = Field(min_length=1, description="reference sample, one row per point")
    queries: Optional[List[List[float]]] = Field(
        default=None, description="points to evaluate; the sample itself when omitted"
    )
    depth: DepthSpec = Field(default_factory=DepthSpec)


class DepthResponse(BaseModel):
    depth: str
    exact: bool
    depths: List[float]


class NeighborsRequest(BaseModel):
    points: List[List[float]] = Field(min_length=1)
    query: List[float] = Field(min_length=1)
    k: Optional[int] = Field(default=None, ge=1)
    beta: Optional[float] = Field(default=None, gt=0, le=1)
    depth: DepthSpec = Field(default_factory=DepthSpec)

    @model_validator(mode="after")
    def _one_size(self) -> "NeighborsRequest":
        if (self.k is None) == (self.beta is None):
            raise ValueError("give exactly one of k and beta")
        return self


class NeighborGroup(BaseModel):
    group: int
    depth: float
    indices: List[int]


class NeighborsResponse(BaseModel):
    k: int
    realized_count: int
    members: List[int]
    groups: List[NeighborGroup]


@router.post("/depth", response_model=DepthResponse)
def compute_depth(request: DepthRequest):
    """
    Depth of each query point with respect to the empirical distribution of
    `points`.
    """
    points = as_points(request.points)
    queries = as_points(request.queries) if request.queries is not None else points
    logger.info(f"Depth request: {request.depth.label()} depth of {len(queries)} point(s), n={len(points)}")
    depths = get_depth(request.depth).depth_all(queries, points)
    return DepthResponse(
        depth=request.depth.label(),
        exact=request.depth.is_exact(points.shape[1]),
        depths=[float(v) for v in depths],
    )


@router.post("/neighbors", response_model=NeighborsResponse)
def compute_neighbors(request: NeighborsRequest):
    """
    Smallest depth-based neighborhood of `query` holding k sample points.
    Tied depth groups are kept whole, so realized_count may exceed k.
    """
    points = as_points(request.points)
    ordering = outward_ordering(request.query, points, request.depth)
    k = request.k if request.k is not None else k_from_beta(request.beta, ordering.n)
    neighborhood = ordering.neighborhood(k)
    groups = [
        NeighborGroup(group=g, depth=float(ordering.depths[g]), indices=[int(i) for i in ordering.groups[g]])
        for g in range(neighborhood.groups_used)
    ]
    return NeighborsResponse(
        k=k,
        realized_count=neighborhood.realized_count,
        members=[int(i) for i in neighborhood.member_indices],
        groups=groups,
    )
