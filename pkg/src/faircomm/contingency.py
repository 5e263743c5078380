"""Shared contingency table for all partition-comparison metrics."""

from __future__ import annotations

import numpy as np

from .errors import NodeSetMismatchError
from .partition import Partition


class ContingencyTable:
    """Cell counts ``counts[i, j] = |c_i ∩ p_j|`` plus margins.

    Built once per (ground truth, prediction) pair and shared read-only
    by every metric, so the whole score set costs a single O(n) pass.
    """

    __slots__ = ("counts", "row_sums", "col_sums", "n")

    def __init__(self, counts: np.ndarray):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("contingency counts must be a 2-d array")
        self.counts = counts
        self.row_sums = counts.sum(axis=1)
        self.col_sums = counts.sum(axis=0)
        self.n = int(counts.sum())

    @classmethod
    def from_partitions(cls, gt: Partition, pred: Partition) -> "ContingencyTable":
        if gt.node_count != pred.node_count:
            raise NodeSetMismatchError(
                f"partitions cover {gt.node_count} vs {pred.node_count} nodes"
            )
        m = gt.community_count
        k = pred.community_count
        counts = np.zeros((m, k), dtype=np.int64)
        ga = gt.assignment
        pa = pred.assignment
        for v in range(gt.node_count):
            counts[ga[v], pa[v]] += 1
        return cls(counts)

    def nonzero_cells(self):
        """Yield (i, j, count) for non-empty cells in row-major order."""
        rows, cols = np.nonzero(self.counts)
        for i, j in zip(rows.tolist(), cols.tolist()):
            yield i, j, int(self.counts[i, j])
