"""
Majority vote over an outward ordering with tie-breaking by successive
regions, then by a seeded coin.
"""
import numpy as np
from numpy.typing import NDArray

from app.core.rng import RngSeed
from app.models.classification import PosteriorEstimate, VoteOutcome, VoteStage
from app.models.neighborhood import OutwardOrdering


def class_counts(labels: NDArray[np.int64], members: NDArray[np.int64]) -> tuple[int, int]:
    class1 = int(labels[members].sum())
    return int(members.size) - class1, class1


def posterior(ordering: OutwardOrdering, labels: NDArray[np.int64], k: int) -> PosteriorEstimate:
    """Fraction of class-1 points in the smallest region holding k points"""
    neighborhood = ordering.neighborhood(k)
    _, class1 = class_counts(labels, neighborhood.member_indices)
    return PosteriorEstimate(
        eta=class1 / neighborhood.realized_count,
        class1_count=class1,
        realized_count=neighborhood.realized_count,
    )


def resolve_vote(
    ordering: OutwardOrdering, labels: NDArray[np.int64], k: int, tie_seed: RngSeed
) -> VoteOutcome:
    """
    Label 1 iff class 1 outnumbers class 0 in the neighborhood of size k. On a
    tie the next groups are added one at a time until the counts differ; a
    tie over the whole sample is settled by a fair coin from `tie_seed`.
    """
    n_groups = ordering.groups_for(k)
    sizes = np.array([group.size for group in ordering.groups])
    ones = np.array([int(labels[group].sum()) for group in ordering.groups])
    cum1 = np.cumsum(ones)
    cum0 = np.cumsum(sizes) - cum1
    class0, class1 = int(cum0[n_groups - 1]), int(cum1[n_groups - 1])
    if class1 != class0:
        return VoteOutcome(int(class1 > class0), class0, class1, VoteStage.MAJORITY, n_groups)
    unequal = np.flatnonzero(cum1[n_groups:] != cum0[n_groups:])
    if unequal.size:
        stop = n_groups + int(unequal[0])
        return VoteOutcome(
            int(cum1[stop] > cum0[stop]), class0, class1, VoteStage.EXPANDED, stop + 1
        )
    coin = int(tie_seed.child("coin").generator().integers(0, 2))
    return VoteOutcome(coin, class0, class1, VoteStage.COIN, len(ordering.groups))
