"""Node-to-community assignments (non-overlapping, covering partitions)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import EdgeListParseError, PartitionCoverageError
from .graph import Graph


class Partition:
    """A partition of the node set ``0 .. n-1`` into indexed communities.

    ``assignment[v]`` is the community index of node ``v``;
    ``communities[c]`` is the frozen node set of community ``c``.
    Instances are immutable after construction.
    """

    __slots__ = ("assignment", "communities", "node_count")

    def __init__(self, assignment: Sequence[int]):
        n = len(assignment)
        if n == 0:
            raise ValueError("partition of an empty node set")
        count = max(assignment) + 1
        groups: list[set[int]] = [set() for _ in range(count)]
        for v, c in enumerate(assignment):
            if not (0 <= c < count):
                raise ValueError(f"community index {c} out of range")
            groups[c].add(v)
        for c, g in enumerate(groups):
            if not g:
                raise ValueError(f"community {c} is empty")
        self.assignment = tuple(assignment)
        self.communities = tuple(frozenset(g) for g in groups)
        self.node_count = n

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Dense community indices in first-appearance order of ``labels``."""
        seen: dict = {}
        assignment = []
        for lab in labels:
            if lab not in seen:
                seen[lab] = len(seen)
            assignment.append(seen[lab])
        return cls(assignment)

    @classmethod
    def from_communities(cls, communities: Iterable[Iterable[int]], node_count: int) -> "Partition":
        assignment = [-1] * node_count
        dup: set[int] = set()
        for c, group in enumerate(communities):
            for v in group:
                if not (0 <= v < node_count):
                    raise ValueError(f"node {v} out of range")
                if assignment[v] != -1:
                    dup.add(v)
                assignment[v] = c
        missing = {v for v, c in enumerate(assignment) if c == -1}
        if dup or missing:
            raise PartitionCoverageError(
                "communities do not cover every node exactly once",
                offending_ids=dup | missing,
            )
        return cls(assignment)

    @property
    def community_count(self) -> int:
        return len(self.communities)

    def community_sizes(self) -> list[int]:
        return [len(c) for c in self.communities]

    def community_of(self, v: int) -> int:
        return self.assignment[v]

    def relabeled(self, permutation: Sequence[int]) -> "Partition":
        """Same grouping with community c renamed to permutation[c]."""
        return Partition([permutation[c] for c in self.assignment])

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and set(self.communities) == set(other.communities)

    def __hash__(self):
        return hash(frozenset(self.communities))

    def __repr__(self) -> str:
        return f"Partition(nodes={self.node_count}, communities={self.community_count})"


def parse_partition(text: str, graph: Graph) -> Partition:
    """Read ``<external_id> <community_label>`` lines against ``graph``.

    Every node of the graph must appear exactly once. Community indices
    are dense, in first-appearance order of the labels.
    """
    raw: dict[int, str] = {}
    duplicated: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected '<node> <community>', got {line!r}", line_number=lineno
            )
        token, label = parts
        try:
            v = graph.index_of(token)
        except KeyError:
            raise PartitionCoverageError(
                "partition references unknown node ids", offending_ids=[token]
            ) from None
        if v in raw:
            duplicated.add(token)
        raw[v] = label

    missing = [graph.label_of(v) for v in range(graph.node_count) if v not in raw]
    if duplicated or missing:
        raise PartitionCoverageError(
            "partition must list every node exactly once",
            offending_ids=set(missing) | duplicated,
        )
    return Partition.from_labels([raw[v] for v in range(graph.node_count)])


def load_partition(path, graph: Graph) -> Partition:
    return parse_partition(Path(path).read_text(encoding="utf-8"), graph)


def partition_to_text(partition: Partition, graph: Graph) -> str:
    lines = [
        f"{graph.label_of(v)} {partition.assignment[v]}"
        for v in range(graph.node_count)
    ]
    return "\n".join(lines) + "\n"


def write_partition(partition: Partition, graph: Graph, path) -> None:
    Path(path).write_text(partition_to_text(partition, graph), encoding="utf-8")
