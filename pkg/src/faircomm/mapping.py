"""Greedy Jaccard matching of ground-truth to predicted communities."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .contingency import ContingencyTable
from .errors import UndefinedValueError
from .partition import Partition


def jaccard(a, b) -> float:
    """|a ∩ b| / |a ∪ b| for node sets; error when both are empty."""
    sa = frozenset(a)
    sb = frozenset(b)
    if not sa and not sb:
        raise UndefinedValueError("jaccard of two empty sets is undefined")
    inter = len(sa & sb)
    return inter / (len(sa) + len(sb) - inter)


@dataclass(frozen=True)
class MappedPair:
    gt_index: int
    pred_index: int | None
    jaccard: float  # 0.0 for pairs mapped to the empty set


@dataclass(frozen=True)
class CommunityMapping:
    """Result of the matching: at most one predicted community per
    ground-truth community, in match order (best first)."""

    pairs: tuple[MappedPair, ...]
    unmapped_predicted: tuple[int, ...]

    def pred_of(self, gt_index: int) -> int | None:
        for p in self.pairs:
            if p.gt_index == gt_index:
                return p.pred_index
        raise KeyError(gt_index)

    def jaccard_of(self, gt_index: int) -> float:
        for p in self.pairs:
            if p.gt_index == gt_index:
                return p.jaccard
        raise KeyError(gt_index)

    def as_dict(self) -> dict[int, int | None]:
        return {p.gt_index: p.pred_index for p in self.pairs}

    def to_json_obj(self) -> list[dict]:
        ordered = sorted(self.pairs, key=lambda p: p.gt_index)
        return [
            {"gt_index": p.gt_index, "pred_index": p.pred_index, "jaccard": p.jaccard}
            for p in ordered
        ]


def map_communities(gt: Partition, pred: Partition, seed: int = 0) -> CommunityMapping:
    """Iteratively match the highest-Jaccard (ground truth, predicted) pair.

    Rounds repeat among the still-unmatched communities until one side is
    exhausted; ties on the maximum are broken by a seeded uniform choice.
    Ground-truth communities left over map to the empty set (the
    prediction missed them entirely); leftover predicted communities are
    recorded but never scored.
    """
    ct = ContingencyTable.from_partitions(gt, pred)
    inter = ct.counts.astype(float)
    sizes_gt = ct.row_sums.astype(float)
    sizes_pred = ct.col_sums.astype(float)
    union = sizes_gt[:, None] + sizes_pred[None, :] - inter
    jac = inter / union

    rng = random.Random(seed)
    m, k = jac.shape
    row_free = np.ones(m, dtype=bool)
    col_free = np.ones(k, dtype=bool)
    pairs: list[MappedPair] = []

    for _ in range(min(m, k)):
        sub = jac[np.ix_(row_free, col_free)]
        best = sub.max()
        rows = np.nonzero(row_free)[0]
        cols = np.nonzero(col_free)[0]
        ties = [
            (int(rows[i]), int(cols[j]))
            for i, j in zip(*np.nonzero(sub == best))
        ]
        gi, pj = ties[rng.randrange(len(ties))] if len(ties) > 1 else ties[0]
        pairs.append(MappedPair(gi, pj, float(jac[gi, pj])))
        row_free[gi] = False
        col_free[pj] = False

    for gi in np.nonzero(row_free)[0]:
        pairs.append(MappedPair(int(gi), None, 0.0))
    unmapped = tuple(int(j) for j in np.nonzero(col_free)[0])
    return CommunityMapping(pairs=tuple(pairs), unmapped_predicted=unmapped)
