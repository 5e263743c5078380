import random

import pytest

from faircomm import Graph, Partition


def two_cliques_graph(k: int = 5) -> Graph:
    """Two k-cliques joined by a single bridge edge (0 .. k-1, k .. 2k-1)."""
    edges = set()
    for base in (0, k):
        for i in range(k):
            for j in range(i + 1, k):
                edges.add((base + i, base + j))
    edges.add((0, k))
    return Graph(2 * k, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    }
    # keep every node attached so degree-based quantities stay defined
    for v in range(n):
        if not any(v in e for e in edges):
            w = rng.randrange(n - 1)
            w = w if w < v else w + 1
            edges.add((min(v, w), max(v, w)))
    return Graph(n, edges)


def random_partition(n: int, k: int, seed: int) -> Partition:
    rng = random.Random(seed)
    labels = [rng.randrange(k) for _ in range(n)]
    return Partition.from_labels(labels)


@pytest.fixture
def triangle_pair() -> Graph:
    # two triangles joined by one edge
    return Graph(6, {(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)})
