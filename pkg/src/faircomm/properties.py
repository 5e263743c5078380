"""Structural properties of communities: size, density, conductance.

Also the min-max normalization and Pearson correlation used when these
properties feed the fairness regression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UndefinedValueError
from .graph import Graph
from .partition import Partition


def community_size(partition: Partition, index: int) -> int:
    if not (0 <= index < partition.community_count):
        raise IndexError(f"community index {index} out of range")
    return len(partition.communities[index])


def community_density(graph: Graph, members) -> float:
    """Internal edges over possible internal pairs.

    A singleton community has no internal pairs; its density is defined
    as 0.0 (no internal cohesion) rather than 0/0.
    """
    mset = frozenset(members)
    if not mset:
        raise ValueError("community is empty")
    k = len(mset)
    if k == 1:
        graph._check_members(mset)
        return 0.0
    internal = graph.internal_edge_count(mset)
    return internal / (k * (k - 1) / 2)


def community_conductance(graph: Graph, members) -> float:
    """Cut edges divided by community volume (sum of member degrees).

    Equals ``cut / (2 * internal + cut)``. Undefined when every member
    is isolated (zero volume).
    """
    mset = frozenset(members)
    if not mset:
        raise ValueError("community is empty")
    cut, vol = graph.cut_and_volume(mset)
    if vol == 0:
        raise UndefinedValueError("conductance undefined: community has zero volume")
    return cut / vol


@dataclass(frozen=True)
class CommunityProperties:
    """Raw property values for one community; conductance may be None
    when the community has zero edge volume."""

    size: int
    density: float
    conductance: float | None


def community_properties(graph: Graph, partition: Partition) -> list[CommunityProperties]:
    """Size, density and conductance for every community of ``partition``."""
    rows = []
    for members in partition.communities:
        try:
            cond = community_conductance(graph, members)
        except UndefinedValueError:
            cond = None
        rows.append(
            CommunityProperties(
                size=len(members),
                density=community_density(graph, members),
                conductance=cond,
            )
        )
    return rows


def cut_fraction(graph: Graph, partition: Partition) -> float:
    """Fraction of edges whose endpoints lie in different communities."""
    if graph.edge_count == 0:
        raise UndefinedValueError("cut fraction undefined on an edgeless graph")
    assign = partition.assignment
    inter = sum(1 for u, v in graph.edges if assign[u] != assign[v])
    return inter / graph.edge_count


def normalize_property(values) -> list[float] | None:
    """Min-max scale ``values`` to [0, 1].

    Returns None (the no-variation flag) when all values are equal, so
    callers can distinguish "no spread" from a genuine all-zero scaling.
    """
    vals = list(values)
    if not vals:
        raise ValueError("cannot normalize an empty list")
    lo = min(vals)
    hi = max(vals)
    if hi == lo:
        return None
    span = hi - lo
    return [(v - lo) / span for v in vals]


def pearson_correlation(x, y) -> float:
    """Sample Pearson correlation coefficient of two equal-length vectors."""
    xs = list(x)
    ys = list(y)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("need at least two points")
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((a - mx) ** 2 for a in xs)
    syy = math.fsum((b - my) ** 2 for b in ys)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedValueError("correlation undefined: zero variance input")
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)
