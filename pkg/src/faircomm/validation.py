"""Ground-truth validation metrics for partition pairs.

All metrics share one :class:`~faircomm.contingency.ContingencyTable`
pass. Logarithms are natural throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contingency import ContingencyTable
from .errors import UndefinedValueError
from .omega import log_num_tables
from .partition import Partition

DEFAULT_RMI_EXACT_THRESHOLD = 30


def _entropy(sizes, n: int) -> float:
    # Term shape (s/n)*(log n - log s) is shared with the mutual
    # information loop so that identical partitions give MI == H exactly.
    log_n = math.log(n)
    total = 0.0
    for s in sizes:
        s = int(s)
        if s > 0:
            total += (s / n) * (log_n - math.log(s))
    return total


def entropy(partition: Partition) -> float:
    """Shannon entropy (nats) of the community size distribution."""
    return _entropy(partition.community_sizes(), partition.node_count)


def mutual_information(ct: ContingencyTable) -> float:
    """Plug-in mutual information (nats) of a contingency table."""
    n = ct.n
    log_n = math.log(n)
    a = ct.row_sums
    b = ct.col_sums
    total = 0.0
    for i, j, c in ct.nonzero_cells():
        total += (c / n) * (
            (log_n - math.log(a[i])) + (math.log(c) - math.log(b[j]))
        )
    return total


def _nmi_from_ct(ct: ContingencyTable) -> float:
    hc = _entropy(ct.row_sums, ct.n)
    hp = _entropy(ct.col_sums, ct.n)
    if hc == 0.0 and hp == 0.0:
        return 1.0
    if hc == 0.0 or hp == 0.0:
        return 0.0
    # sqrt(hc*hp) == hc when the entropies coincide; taking the exact
    # branch keeps NMI(C, C) at 1.0 to the last bit.
    denom = hc if hc == hp else math.sqrt(hc * hp)
    return mutual_information(ct) / denom


def nmi(gt: Partition, pred: Partition) -> float:
    """Normalized mutual information MI / sqrt(H(C) H(P)).

    Both partitions trivial (single community) gives 1; exactly one
    trivial gives 0.
    """
    return _nmi_from_ct(ContingencyTable.from_partitions(gt, pred))


def _pair_counts(ct: ContingencyTable) -> tuple[int, int, int, int]:
    counts = ct.counts
    sij = int((counts * (counts - 1) // 2).sum())
    sa = int(sum(x * (x - 1) // 2 for x in ct.row_sums.tolist()))
    sb = int(sum(x * (x - 1) // 2 for x in ct.col_sums.tolist()))
    total = ct.n * (ct.n - 1) // 2
    return sij, sa, sb, total


def rand_index(gt: Partition, pred: Partition) -> float:
    """Fraction of node pairs on which the two partitions agree."""
    ct = ContingencyTable.from_partitions(gt, pred)
    if ct.n < 2:
        raise UndefinedValueError("rand index needs at least two nodes")
    tp, sa, sb, total = _pair_counts(ct)
    tn = total - sa - sb + tp
    return (tp + tn) / total


def _ari_from_ct(ct: ContingencyTable) -> float:
    if ct.n < 2:
        raise UndefinedValueError("adjusted rand index needs at least two nodes")
    sij, sa, sb, total = _pair_counts(ct)
    expected = sa * sb / total
    numerator = sij - expected
    denominator = 0.5 * (sa + sb) - expected
    if denominator == 0.0:
        # Both partitions are all-singletons or both one community; the
        # structures coincide, so agreement is perfect.
        return 1.0
    return numerator / denominator


def ari(gt: Partition, pred: Partition) -> float:
    """Adjusted Rand index (chance-corrected pair agreement)."""
    return _ari_from_ct(ContingencyTable.from_partitions(gt, pred))


# -- reduced mutual information ------------------------------------------


def _micro_mutual_information(ct: ContingencyTable) -> float:
    """Combinatorial (log-factorial) mutual information in nats/node.

    This is the encoding-based MI that the contingency-table correction
    is defined against; unlike the plug-in form it makes the correction
    cancel exactly for an all-singleton prediction. Margin terms are
    summed in sorted order so that cancellation is exact in floats.
    """
    n = ct.n
    total = math.lgamma(n + 1)
    for x in sorted(ct.row_sums.tolist(), reverse=True):
        total -= math.lgamma(x + 1)
    for x in sorted(ct.col_sums.tolist(), reverse=True):
        total -= math.lgamma(x + 1)
    for _, _, c in ct.nonzero_cells():
        total += math.lgamma(c + 1)
    return total / n


def _raw_rmi(ct: ContingencyTable, exact_threshold: int) -> tuple[float, str]:
    log_omega, path = log_num_tables(
        ct.row_sums.tolist(), ct.col_sums.tolist(), exact_threshold
    )
    return _micro_mutual_information(ct) - log_omega / ct.n, path


def rmi_raw(gt: Partition, pred: Partition,
            exact_threshold: int = DEFAULT_RMI_EXACT_THRESHOLD) -> float:
    """Unnormalized reduced mutual information (nats per node)."""
    ct = ContingencyTable.from_partitions(gt, pred)
    return _raw_rmi(ct, exact_threshold)[0]


def rmi_detail(gt: Partition, pred: Partition,
               exact_threshold: int = DEFAULT_RMI_EXACT_THRESHOLD) -> tuple[float, str]:
    """Normalized RMI plus which Omega route ("exact"/"estimate") ran.

    Normalization divides by the self score RMI(C, C) so identical
    partitions score exactly 1; the degenerate 0/0 case (a ground truth
    with no self information) is defined as 1.
    """
    ct = ContingencyTable.from_partitions(gt, pred)
    value, path_num = _raw_rmi(ct, exact_threshold)
    self_ct = ContingencyTable(np.diag(ct.row_sums))
    self_value, path_den = _raw_rmi(self_ct, exact_threshold)
    path = "exact" if (path_num == "exact" and path_den == "exact") else "estimate"
    if self_value == 0.0:
        if value == 0.0:
            return 1.0, path
        raise UndefinedValueError(
            "normalized RMI undefined: ground truth carries no self information"
        )
    return value / self_value, path


def rmi(gt: Partition, pred: Partition,
        exact_threshold: int = DEFAULT_RMI_EXACT_THRESHOLD) -> float:
    """Normalized reduced mutual information (1 for identical partitions)."""
    return rmi_detail(gt, pred, exact_threshold)[0]


# -- label-overlap F1 family ----------------------------------------------


def _pf1_from_ct(ct: ContingencyTable) -> float:
    best_gt = ct.counts.argmax(axis=0)  # ties resolve to the smallest index
    total = 0.0
    k = ct.counts.shape[1]
    for j in range(k):
        i = int(best_gt[j])
        overlap = int(ct.counts[i, j])
        total += 2.0 * overlap / (int(ct.col_sums[j]) + int(ct.row_sums[i]))
    return total / k


def pf1(gt: Partition, pred: Partition) -> float:
    """Mean F1 of predicted communities against their best-overlap label.

    Each predicted community is assigned the ground-truth community
    whose label is most frequent among its members (ties: smallest
    ground-truth index); the mean is unweighted.
    """
    return _pf1_from_ct(ContingencyTable.from_partitions(gt, pred))


def _nf1_from_ct(ct: ContingencyTable) -> float:
    best_gt = ct.counts.argmax(axis=0)
    matched = set(best_gt.tolist())
    m = ct.counts.shape[0]
    k = ct.counts.shape[1]
    coverage = len(matched) / m
    redundancy = k / len(matched)
    return _pf1_from_ct(ct) * coverage / redundancy


def nf1(gt: Partition, pred: Partition) -> float:
    """PF1 scaled by ground-truth coverage and predicted redundancy."""
    return _nf1_from_ct(ContingencyTable.from_partitions(gt, pred))


@dataclass(frozen=True)
class ValidationScores:
    nmi: float
    rmi: float
    ari: float
    pf1: float
    nf1: float
    rmi_path: str

    def as_dict(self) -> dict:
        return {
            "nmi": self.nmi,
            "rmi": self.rmi,
            "ari": self.ari,
            "pf1": self.pf1,
            "nf1": self.nf1,
            "rmi_path": self.rmi_path,
        }


def validation_scores(gt: Partition, pred: Partition,
                      rmi_exact_threshold: int = DEFAULT_RMI_EXACT_THRESHOLD) -> ValidationScores:
    """All five validation metrics from one shared contingency pass."""
    ct = ContingencyTable.from_partitions(gt, pred)
    value, path_num = _raw_rmi(ct, rmi_exact_threshold)
    self_ct = ContingencyTable(np.diag(ct.row_sums))
    self_value, path_den = _raw_rmi(self_ct, rmi_exact_threshold)
    path = "exact" if (path_num == "exact" and path_den == "exact") else "estimate"
    if self_value == 0.0 and value == 0.0:
        rmi_value = 1.0
    elif self_value == 0.0:
        raise UndefinedValueError(
            "normalized RMI undefined: ground truth carries no self information"
        )
    else:
        rmi_value = value / self_value
    return ValidationScores(
        nmi=_nmi_from_ct(ct),
        rmi=rmi_value,
        ari=_ari_from_ct(ct),
        pf1=_pf1_from_ct(ct),
        nf1=_nf1_from_ct(ct),
        rmi_path=path,
    )
