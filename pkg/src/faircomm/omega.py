"""Counting non-negative integer tables with fixed margins.

The chance correction of the reduced mutual information needs
``Omega(a, b)``: the number of contingency tables whose row sums are
``a`` and column sums are ``b``. Two routes are provided:

* an exact dynamic program over remaining column sums, feasible for the
  small-n regime (the production default switches at n <= 30), and
* a maximum-entropy saddle-point estimate with a Gaussian (second order)
  correction for larger margins; see ``docs/rmi-approximation.md`` for
  the derivation and its accuracy against the exact count.
"""

from __future__ import annotations

import math

import numpy as np


def _clean_margins(row_sums, col_sums) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = tuple(sorted((int(x) for x in row_sums if int(x) > 0), reverse=True))
    b = tuple(sorted((int(x) for x in col_sums if int(x) > 0), reverse=True))
    if sum(a) != sum(b):
        raise ValueError(f"margin totals differ: {sum(a)} vs {sum(b)}")
    return a, b


def count_tables_exact(row_sums, col_sums) -> int:
    """Exact ``Omega(a, b)`` via DP over sorted remaining column sums.

    Rows are consumed one at a time; the state after each row is the
    multiset of remaining column sums, which collapses the exponential
    tree of labeled fillings into a small memo table. The side with
    fewer parts is used as columns to keep the per-row composition
    enumeration narrow.
    """
    a, b = _clean_margins(row_sums, col_sums)
    if not a:
        return 1
    if len(b) > len(a):
        a, b = b, a

    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def fill(i: int, cols: tuple[int, ...]) -> int:
        if i == len(a):
            return 1
        key = (i, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r = a[i]
        caps = list(cols)
        suffix = [0] * (len(caps) + 1)
        for j in range(len(caps) - 1, -1, -1):
            suffix[j] = suffix[j + 1] + caps[j]
        total = 0
        alloc = [0] * len(caps)

        def place(j: int, left: int) -> None:
            nonlocal total
            if j == len(caps):
                if left == 0:
                    child = tuple(
                        sorted((c - al for c, al in zip(caps, alloc) if c - al > 0),
                               reverse=True)
                    )
                    total += fill(i + 1, child)
                return
            if left > suffix[j]:
                return
            for amount in range(min(left, caps[j]) + 1):
                alloc[j] = amount
                place(j + 1, left - amount)
            alloc[j] = 0

        place(0, r)
        memo[key] = total
        return total

    return fill(0, b)


def log_count_tables_exact(row_sums, col_sums) -> float:
    return float(math.log(count_tables_exact(row_sums, col_sums)))


def _solve_margin(other: np.ndarray, targets: np.ndarray, start: np.ndarray | None) -> np.ndarray:
    """Per-row Newton solve of sum_j x*o_j/(1 - x*o_j) = target.

    The left side is increasing and convex in x on (0, 1/max(o)), so a
    clipped Newton iteration converges from any interior start.
    """
    hi = (1.0 - 1e-12) / float(other.max())
    x = np.full(targets.shape, hi * 0.5) if start is None else np.clip(start, hi * 1e-9, hi)
    for _ in range(100):
        q = x[:, None] * other[None, :]
        w = q / (1.0 - q)
        f = w.sum(axis=1) - targets
        if np.max(np.abs(f) / targets) < 1e-13:
            break
        df = (other[None, :] / (1.0 - q) ** 2).sum(axis=1)
        x = np.clip(x - f / df, hi * 1e-12, hi)
    return x


def log_count_tables_estimate(row_sums, col_sums) -> float:
    """Saddle-point estimate of ``log Omega(a, b)``.

    Independent geometric cell entries with means matched to the margins
    give ``Omega = P(margins) / (prod(1 - q_ij) * prod x_i^a_i * prod
    y_j^b_j)``; the hit probability ``P`` is evaluated with a local
    central-limit (Gaussian) correction over the R + S - 1 free margin
    sums.
    """
    a_t, b_t = _clean_margins(row_sums, col_sums)
    if len(a_t) <= 1 or len(b_t) <= 1:
        return 0.0
    a = np.array(a_t, dtype=float)
    b = np.array(b_t, dtype=float)
    r_count, s_count = len(a), len(b)

    x = None
    y = b / (b.sum() + b.max())
    for _ in range(500):
        x = _solve_margin(y, a, x)
        y = _solve_margin(x, b, y)
        q = x[:, None] * y[None, :]
        resid = np.abs((q / (1.0 - q)).sum(axis=1) - a) / a
        if resid.max() < 1e-10:
            break

    q = x[:, None] * y[None, :]
    log_omega_raw = (
        -np.log1p(-q).sum()
        - float(a @ np.log(x))
        - float(b @ np.log(y))
    )

    # Gaussian correction: covariance of the margin-sum vector with the
    # redundant final column sum dropped.
    var = q / (1.0 - q) ** 2
    dim = r_count + s_count - 1
    cov = np.zeros((dim, dim))
    cov[:r_count, :r_count] = np.diag(var.sum(axis=1))
    cov[r_count:, r_count:] = np.diag(var.sum(axis=0)[:-1])
    cov[:r_count, r_count:] = var[:, :-1]
    cov[r_count:, :r_count] = var[:, :-1].T
    sign, logdet = np.linalg.slogdet(2.0 * math.pi * cov)
    if sign <= 0:
        raise ArithmeticError("margin covariance is not positive definite")
    return float(log_omega_raw - 0.5 * logdet)


def _log_tables_one_unit_columns(other_margin) -> float:
    # All columns sum to 1: each unit picks a row, so Omega is the
    # multinomial n! / prod(a_i!).
    n = sum(other_margin)
    return math.lgamma(n + 1) - sum(math.lgamma(x + 1) for x in other_margin)


def log_num_tables(row_sums, col_sums, exact_threshold: int = 30) -> tuple[float, str]:
    """``(log Omega, path)`` where path records which route ran."""
    a, b = _clean_margins(row_sums, col_sums)
    if len(a) <= 1 or len(b) <= 1:
        return 0.0, "exact"
    if all(x == 1 for x in b):
        return _log_tables_one_unit_columns(a), "exact"
    if all(x == 1 for x in a):
        return _log_tables_one_unit_columns(b), "exact"
    if sum(a) <= exact_threshold:
        return log_count_tables_exact(a, b), "exact"
    return log_count_tables_estimate(a, b), "estimate"
