import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from app.core.exceptions import ValidationError


@dataclass(frozen=True, eq=False)
class SymmetrizedSample:
    """Originals X_i plus their reflections 2x - X_i through the query x"""

    query: NDArray[np.float64]
    originals: NDArray[np.float64]
    reflected: NDArray[np.float64]

    @property
    def n(self) -> int:
        return int(self.originals.shape[0])

    @property
    def combined(self) -> NDArray[np.float64]:
        """All 2n points, originals first"""
        return np.vstack([self.originals, self.reflected])


@dataclass(frozen=True, eq=False)
class DepthNeighborhood:
    """Smallest union of leading ordering groups holding at least k points"""

    query: NDArray[np.float64]
    k: int
    beta: float
    member_indices: NDArray[np.int64]
    realized_count: int
    level: float  # ordering score of the outermost group taken
    groups_used: int

    def members(self) -> frozenset[int]:
        return frozenset(int(i) for i in self.member_indices)


@dataclass(frozen=True, eq=False)
class OutwardOrdering:
    """
    Original indices grouped by equal depth, groups in strictly decreasing
    depth order. Within a group no order is exposed.
    """

    groups: tuple[NDArray[np.int64], ...]
    depths: NDArray[np.float64]
    query: Optional[NDArray[np.float64]] = None

    def __post_init__(self):
        if len(self.groups) != len(self.depths):
            raise ValidationError("one depth value per group is required")
        if len(self.depths) > 1 and not np.all(np.diff(self.depths) < 0):
            raise ValidationError("group depths must be strictly decreasing")

    @property
    def n(self) -> int:
        return int(sum(group.size for group in self.groups))

    def cumulative_sizes(self) -> NDArray[np.int64]:
        return np.cumsum([group.size for group in self.groups])

    def groups_for(self, k: int) -> int:
        """Number of leading groups needed to reach k points"""
        if not 1 <= k <= self.n:
            raise ValidationError(f"k must lie in [1, {self.n}], got {k}")
        return int(np.searchsorted(self.cumulative_sizes(), k)) + 1

    def members(self, n_groups: int) -> NDArray[np.int64]:
        return np.sort(np.concatenate(self.groups[:n_groups]))

    def neighborhood(self, k: int) -> DepthNeighborhood:
        n_groups = self.groups_for(k)
        members = self.members(n_groups)
        query = self.query if self.query is not None else np.empty(0)
        return DepthNeighborhood(
            query=query,
            k=k,
            beta=k / self.n,
            member_indices=members,
            realized_count=int(members.size),
            level=float(self.depths[n_groups - 1]),
            groups_used=n_groups,
        )


def k_from_beta(beta: float, n: int) -> int:
    """ceil(beta * n), clipped to [1, n]; guards against 0.07 * 100 = 7.000000000000001"""
    if not 0 < beta <= 1:
        raise ValidationError(f"beta must lie in (0, 1], got {beta}")
    return min(n, max(1, math.ceil(beta * n - 1e-9)))
