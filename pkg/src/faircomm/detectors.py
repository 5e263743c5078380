"""Built-in baseline detectors: label propagation and greedy modularity.

These exist so the benchmark pipeline runs end to end without external
tools; every other detection method enters through partition-file
ingestion.
"""

from __future__ import annotations

import heapq
import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import UndefinedValueError
from .graph import Graph
from .partition import Partition


def modularity(graph: Graph, partition: Partition) -> float:
    """Q = sum over communities of m_c/m - (vol_c / 2m)^2."""
    m = graph.edge_count
    if m == 0:
        raise UndefinedValueError("modularity undefined on an edgeless graph")
    assign = partition.assignment
    internal = [0] * partition.community_count
    volume = [0] * partition.community_count
    for u, v in graph.edges:
        if assign[u] == assign[v]:
            internal[assign[u]] += 1
    for v in range(graph.node_count):
        volume[assign[v]] += graph.degree(v)
    return sum(
        ic / m - (vol / (2.0 * m)) ** 2 for ic, vol in zip(internal, volume)
    )


def label_propagation(graph: Graph, seed: int = 0) -> Partition:
    """Asynchronous label propagation.

    Every node starts with a unique label; sweeps visit nodes in a
    seeded random order and move each node to the label held by the
    majority of its neighbors (seeded uniform choice among tied
    majority labels). Stops once every node already holds one of its
    neighborhood's majority labels.
    """
    rng = random.Random(seed)
    labels = list(range(graph.node_count))
    order = list(range(graph.node_count))
    while True:
        rng.shuffle(order)
        changed = 0
        for v in order:
            neighbors = graph.neighbors(v)
            if not neighbors:
                continue
            counts = Counter(labels[w] for w in neighbors)
            top = max(counts.values())
            if counts.get(labels[v], 0) == top:
                continue
            winners = sorted(lab for lab, c in counts.items() if c == top)
            labels[v] = winners[rng.randrange(len(winners))] if len(winners) > 1 else winners[0]
            changed += 1
        if changed == 0:
            break
    return Partition.from_labels(labels)


def _merge_gain(e_ab: int, vol_a: int, vol_b: int, m: int) -> float:
    # Canonical gain expression; the heap and the naive reference scan
    # must produce bit-identical values for ties to break identically.
    return e_ab / m - (vol_a * vol_b) / (2.0 * m * m)


def greedy_modularity(graph: Graph) -> Partition:
    """Agglomerative modularity maximization.

    Starts from singletons and repeatedly merges the community pair
    with the largest positive modularity gain; ties break toward the
    smallest community-id pair (a merge keeps the smaller id). Stops
    when no merge has a strictly positive gain.
    """
    m = graph.edge_count
    if m == 0:
        raise UndefinedValueError("greedy modularity needs at least one edge")
    n = graph.node_count

    volume = {v: graph.degree(v) for v in range(n)}
    between: dict[int, dict[int, int]] = defaultdict(dict)
    for u, v in graph.edges:
        between[u][v] = 1
        between[v][u] = 1
    alive = set(range(n))
    version = [0] * n
    nodes_of = {v: [v] for v in range(n)}

    heap: list[tuple[float, int, int, int, int]] = []
    for a in range(n):
        for b, e in between[a].items():
            if a < b:
                gain = _merge_gain(e, volume[a], volume[b], m)
                heapq.heappush(heap, (-gain, a, b, version[a], version[b]))

    while heap:
        neg_gain, a, b, va, vb = heapq.heappop(heap)
        if a not in alive or b not in alive or version[a] != va or version[b] != vb:
            continue
        if -neg_gain <= 0.0:
            break

        # merge b into a (a < b by construction)
        alive.remove(b)
        version[a] += 1
        nodes_of[a].extend(nodes_of.pop(b))
        volume[a] += volume.pop(b)
        nbrs_a = between[a]
        nbrs_a.pop(b, None)
        for c, e in between.pop(b).items():
            if c == a:
                continue
            between[c].pop(b, None)
            nbrs_a[c] = nbrs_a.get(c, 0) + e
            between[c][a] = nbrs_a[c]
        for c, e in nbrs_a.items():
            lo, hi = (a, c) if a < c else (c, a)
            gain = _merge_gain(e, volume[lo], volume[hi], m)
            heapq.heappush(heap, (-gain, lo, hi, version[lo], version[hi]))

    assignment = [0] * n
    for idx, root in enumerate(sorted(alive)):
        for v in nodes_of[root]:
            assignment[v] = idx
    return Partition.from_labels([assignment[v] for v in range(n)])


@dataclass(frozen=True)
class DetectorRun:
    """One method applied ``len(partitions)`` times to a graph."""

    method: str
    seed: int
    partitions: tuple[Partition, ...]
    wall_times: tuple[float, ...]


BUILTIN_DETECTORS = ("lpa", "cnm")


def run_detector(graph: Graph, method: str, seed: int = 0, reps: int = 1) -> DetectorRun:
    """Run a builtin detector ``reps`` times (rep r uses seed + r)."""
    if method not in BUILTIN_DETECTORS:
        raise ValueError(f"unknown detector {method!r}; choose from {BUILTIN_DETECTORS}")
    partitions = []
    times = []
    for r in range(reps):
        start = time.perf_counter()
        if method == "lpa":
            part = label_propagation(graph, seed=seed + r)
        else:
            part = greedy_modularity(graph)
        times.append(time.perf_counter() - start)
        partitions.append(part)
    return DetectorRun(
        method=method, seed=seed,
        partitions=tuple(partitions), wall_times=tuple(times),
    )
