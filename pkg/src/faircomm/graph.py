"""Undirected simple graph with external/internal node-id translation.

Graphs are built once and never mutated afterwards; every accessor is a
pure read, so instances can be shared freely across threads.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EdgeListParseError

log = logging.getLogger(__name__)


class Graph:
    """Undirected, unweighted, simple graph over dense internal ids.

    Internal node ids are ``0 .. node_count-1`` in first-appearance order
    of the external labels. ``labels[i]`` is the external token for
    internal id ``i``.
    """

    __slots__ = (
        "node_count",
        "edges",
        "labels",
        "_index",
        "_adj",
        "_adj_sets",
        "self_loops_dropped",
        "duplicate_edges_dropped",
    )

    def __init__(
        self,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        self_loops_dropped: int = 0,
        duplicate_edges_dropped: int = 0,
    ):
        if labels is None:
            labels = [str(i) for i in range(node_count)]
        if len(labels) != node_count:
            raise ValueError(
                f"label map has {len(labels)} entries for {node_count} nodes"
            )
        if len(set(labels)) != node_count:
            raise ValueError("label map is not a bijection (duplicate labels)")

        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) outside node range")
            canon.add((u, v) if u < v else (v, u))

        self.node_count = node_count
        self.edges = tuple(sorted(canon))
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(ns) for ns in adj)
        self._adj_sets = tuple(frozenset(ns) for ns in adj)
        self.self_loops_dropped = self_loops_dropped
        self.duplicate_edges_dropped = duplicate_edges_dropped

    # -- basic accessors -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def label_of(self, v: int) -> str:
        return self.labels[v]

    def index_of(self, label: str) -> int:
        return self._index[label]

    def degrees(self) -> list[int]:
        return [len(ns) for ns in self._adj]

    # -- subgraph counts used by the community properties ----------------

    def internal_edge_count(self, members) -> int:
        """Number of edges with both endpoints in ``members``."""
        mset = members if isinstance(members, (set, frozenset)) else set(members)
        self._check_members(mset)
        total = 0
        for v in mset:
            for w in self._adj[v]:
                if w in mset:
                    total += 1
        return total // 2

    def cut_and_volume(self, members) -> tuple[int, int]:
        """(edges leaving ``members``, total degree of ``members``)."""
        mset = members if isinstance(members, (set, frozenset)) else set(members)
        self._check_members(mset)
        cut = 0
        vol = 0
        for v in mset:
            vol += len(self._adj[v])
            for w in self._adj[v]:
                if w not in mset:
                    cut += 1
        return cut, vol

    def _check_members(self, members) -> None:
        for v in members:
            if not (0 <= v < self.node_count):
                raise ValueError(f"node {v} is not in the graph")

    def is_connected(self) -> bool:
        if self.node_count == 0:
            return True
        seen = bytearray(self.node_count)
        stack = [0]
        seen[0] = 1
        count = 1
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    stack.append(w)
        return count == self.node_count

    # -- serialization ----------------------------------------------------

    def to_edge_list_text(self) -> str:
        lines = [f"{self.labels[u]} {self.labels[v]}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def parse_edge_list(text: str) -> Graph:
    """Build a graph from whitespace-separated edge-list text.

    One edge per line as ``<id> <id>``; ids are arbitrary non-whitespace
    tokens; lines starting with ``#`` and blank lines are ignored.
    Duplicate edges (in either orientation) and self-loops are dropped
    with a counted warning. Node ids are assigned in first-appearance
    order.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0

    def intern(token: str) -> int:
        i = index.get(token)
        if i is None:
            i = len(labels)
            index[token] = i
            labels.append(token)
        return i

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected exactly two tokens, got {len(parts)}: {line!r}",
                line_number=lineno,
            )
        u, v = intern(parts[0]), intern(parts[1])
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            duplicates += 1
            continue
        edges.add(key)

    if not edges:
        raise EdgeListParseError("edge list contains no usable edges")
    if self_loops or duplicates:
        log.warning(
            "dropped %d self-loop(s) and %d duplicate edge(s) while loading",
            self_loops,
            duplicates,
        )
    return Graph(
        len(labels),
        edges,
        labels,
        self_loops_dropped=self_loops,
        duplicate_edges_dropped=duplicates,
    )


def load_graph(path) -> Graph:
    """Parse an edge-list file (see :func:`parse_edge_list`)."""
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(graph: Graph, path) -> None:
    Path(path).write_text(graph.to_edge_list_text(), encoding="utf-8")
