"""Synthetic ground-truth networks.

Two generators cover the benchmark needs:

* a planted-partition generator whose single tuning knob is the
  inter-community mixing fraction (the property the experiments vary),
  with power-law community sizes, and
* a homophilic preferential-attachment growth model with node, triadic
  and degree-proportional edge events, including the multi-majority
  (MMaj) and multi-minority (MMin) presets.

Both are seed-deterministic: the same config and seed reproduce the
edge list byte for byte.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .graph import Graph
from .partition import Partition

log = logging.getLogger(__name__)


# -- planted partition ------------------------------------------------------


@dataclass(frozen=True)
class PlantedPartitionConfig:
    """Planted-partition settings.

    ``community_sizes`` may be given explicitly; otherwise sizes are
    sampled from a power law with exponent ``size_exponent`` and minimum
    ``min_community``. ``mixing`` is the probability that an edge leaves
    its community.
    """

    n: int
    mixing: float
    avg_degree: float
    community_sizes: tuple[int, ...] | None = None
    size_exponent: float = 2.5
    min_community: int = 20
    max_community: int | None = None
    max_degree: int | None = None
    seed: int = 0

    def validate(self) -> None:
        if self.n < 4:
            raise ConfigError("need at least 4 nodes")
        if not (0.0 <= self.mixing <= 1.0):
            raise ConfigError(f"mixing must be in [0, 1], got {self.mixing}")
        if self.avg_degree <= 0:
            raise ConfigError("average degree must be positive")
        if self.community_sizes is not None:
            sizes = list(self.community_sizes)
            if sum(sizes) != self.n:
                raise ConfigError(
                    f"community sizes sum to {sum(sizes)}, expected n={self.n}"
                )
            if any(s < 2 for s in sizes):
                raise ConfigError("every community needs at least 2 nodes")
        elif self.min_community < 2:
            raise ConfigError("minimum community size must be at least 2")


def _sample_community_sizes(cfg: PlantedPartitionConfig, rng: random.Random) -> list[int]:
    if cfg.community_sizes is not None:
        return list(cfg.community_sizes)
    cap = cfg.max_community or max(cfg.min_community, cfg.n // 4)
    sizes: list[int] = []
    left = cfg.n
    while left >= cfg.min_community:
        u = rng.random()
        s = int(cfg.min_community * (1.0 - u) ** (-1.0 / (cfg.size_exponent - 1.0)))
        s = min(s, cap, left)
        if left - s < cfg.min_community:
            s = left  # absorb the tail rather than strand a tiny remainder
        sizes.append(s)
        left -= s
    if left:
        sizes[-1] += left
    return sizes


def generate_planted(config: PlantedPartitionConfig) -> tuple[Graph, Partition]:
    """Generate a graph with planted communities and mixing fraction mu.

    Each node draws an edge budget around half the target degree; every
    budgeted edge stays inside the node's community with probability
    ``1 - mixing`` and otherwise lands uniformly outside it. Duplicate
    and self edges are rejected. Components are reconnected afterwards,
    preferring intra-community links (cross-community repair edges are
    only added when mixing > 0, preserving the mixing = 0 boundary).
    """
    config.validate()
    rng = random.Random(config.seed)
    npr = np.random.default_rng(config.seed)

    sizes = _sample_community_sizes(config, rng)
    if len(sizes) == 1 and config.mixing > 0.0:
        raise ConfigError("mixing > 0 requires at least two communities")
    expected_intra = (1.0 - config.mixing) * config.avg_degree
    if expected_intra > min(sizes) - 1:
        raise ConfigError(
            f"expected intra-degree {expected_intra:.1f} does not fit a "
            f"community of size {min(sizes)}"
        )

    n = config.n
    assignment = np.repeat(np.arange(len(sizes)), sizes).tolist()
    members = [[] for _ in sizes]
    for v, c in enumerate(assignment):
        members[c].append(v)

    budget_cap = (config.max_degree // 2) if config.max_degree else n - 1
    budgets = np.clip(npr.poisson(config.avg_degree / 2.0, n), 1, budget_cap)

    edges: set[tuple[int, int]] = set()
    skipped = 0
    for v in range(n):
        home = members[assignment[v]]
        for _ in range(int(budgets[v])):
            placed = False
            inter = rng.random() < config.mixing
            for _ in range(60):
                if inter:
                    w = rng.randrange(n)
                    if assignment[w] == assignment[v]:
                        continue
                else:
                    w = home[rng.randrange(len(home))]
                    if w == v:
                        continue
                key = (v, w) if v < w else (w, v)
                if key in edges:
                    continue
                edges.add(key)
                placed = True
                break
            if not placed:
                skipped += 1

    _reconnect(edges, assignment, members, rng, allow_cross=config.mixing > 0.0)
    if skipped:
        log.debug("planted generator skipped %d saturated stubs", skipped)

    graph = Graph(n, edges)
    return graph, Partition(assignment)


def _reconnect(edges, assignment, members, rng, allow_cross: bool) -> None:
    """Union components with intra-community edges, then (optionally)
    bridge the remaining component per community group."""
    n = len(assignment)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for u, v in edges:
        union(u, v)

    for group in members:
        anchor = group[0]
        for v in group[1:]:
            if find(v) != find(anchor):
                key = (anchor, v) if anchor < v else (v, anchor)
                edges.add(key)
                union(anchor, v)

    if not allow_cross:
        return
    anchors = [group[0] for group in members]
    base = anchors[0]
    for a in anchors[1:]:
        if find(a) != find(base):
            key = (base, a) if base < a else (a, base)
            edges.add(key)
            union(base, a)


# -- homophilic preferential attachment -------------------------------------


@dataclass(frozen=True)
class HichBaConfig:
    """Growth-model settings.

    ``community_weights`` is the assignment likelihood per community
    (positive, summing to 1), ``homophily`` the probability that a new
    edge endpoint shares the source's community, ``p_node`` the
    node-event probability, ``p_triad`` the triadic-closure probability
    and ``p_pa`` the probability of degree-proportional endpoint choice.
    """

    n: int
    community_weights: tuple[float, ...]
    homophily: float = 0.9
    p_node: float = 0.1
    p_triad: float = 0.3
    p_pa: float = 0.8
    seed: int = 0

    def validate(self) -> None:
        r = self.community_weights
        if not r:
            raise ConfigError("community weights must not be empty")
        if any(w <= 0 for w in r):
            raise ConfigError("community weights must be positive")
        if abs(sum(r) - 1.0) > 1e-9:
            raise ConfigError(f"community weights sum to {sum(r)}, expected 1")
        if self.n < len(r):
            raise ConfigError("need at least one node per community")
        for name in ("homophily", "p_node", "p_triad", "p_pa"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if self.p_node <= 0.0:
            raise ConfigError("p_node must be positive so growth terminates")


def hichba_mmin_config(n: int = 10_000, seed: int = 0, **overrides) -> HichBaConfig:
    """Multiple minority communities plus one dominant majority."""
    r = [0.005] * 3 + [0.01] * 3 + [0.02] * 3 + [0.9]
    return _preset(n, r, seed, overrides)


def hichba_mmaj_config(n: int = 10_000, seed: int = 0, **overrides) -> HichBaConfig:
    """Three size tiers of majority communities (nine in total)."""
    r = [0.003] * 3 + [0.03] * 3 + [0.3] * 3
    return _preset(n, r, seed, overrides)


def _preset(n, r, seed, overrides) -> HichBaConfig:
    total = sum(r)
    weights = tuple(w / total for w in r)  # published weights sum to 0.999
    return HichBaConfig(n=n, community_weights=weights, seed=seed, **overrides)


def planted_lfr_like_config(mixing: float, n: int = 10_000, seed: int = 0) -> PlantedPartitionConfig:
    """Mixing-benchmark settings: average degree 20, degree cap 100,
    minimum community 20, size exponent 2.5."""
    return PlantedPartitionConfig(
        n=n,
        mixing=mixing,
        avg_degree=20,
        max_degree=100,
        min_community=20,
        size_exponent=2.5,
        seed=seed,
    )


class _Growth:
    """Mutable state for the attachment loop."""

    __slots__ = ("community", "nbr_sets", "nbr_lists", "members",
                 "stubs", "comm_stubs", "edges")

    def __init__(self, community_count: int):
        self.community: list[int] = []
        self.nbr_sets: list[set[int]] = []
        self.nbr_lists: list[list[int]] = []
        self.members: list[list[int]] = [[] for _ in range(community_count)]
        self.stubs: list[int] = []
        self.comm_stubs: list[list[int]] = [[] for _ in range(community_count)]
        self.edges: list[tuple[int, int]] = []

    def add_node(self, c: int) -> int:
        v = len(self.community)
        self.community.append(c)
        self.nbr_sets.append(set())
        self.nbr_lists.append([])
        self.members[c].append(v)
        return v

    def add_edge(self, u: int, v: int) -> None:
        self.nbr_sets[u].add(v)
        self.nbr_sets[v].add(u)
        self.nbr_lists[u].append(v)
        self.nbr_lists[v].append(u)
        self.stubs.append(u)
        self.stubs.append(v)
        self.comm_stubs[self.community[u]].append(u)
        self.comm_stubs[self.community[v]].append(v)
        self.edges.append((u, v) if u < v else (v, u))


def _pick_endpoint(state: _Growth, rng: random.Random, own_community: int,
                   same: bool, use_pa: bool, exclude: int | None) -> int | None:
    """Sample an endpoint from the requested community side.

    Degree-proportional choice draws from stub lists; uniform choice
    from member lists. Cross-community draws sample globally and reject
    the source's own community.
    """
    for _ in range(40):
        if same:
            pool = state.comm_stubs[own_community] if use_pa else state.members[own_community]
            if not pool:
                pool = state.members[own_community]
            if not pool:
                return None
            cand = pool[rng.randrange(len(pool))]
            if cand == exclude:
                continue
            return cand
        source_list = state.stubs if use_pa else None
        if source_list:
            cand = source_list[rng.randrange(len(source_list))]
        else:
            cand = rng.randrange(len(state.community))
        if state.community[cand] == own_community or cand == exclude:
            continue
        return cand
    return None


def _grow(n: int, community_count: int, next_community, homophily: float,
          p_node: float, p_triad: float, p_pa: float,
          rng: random.Random) -> tuple[list[tuple[int, int]], list[int]]:
    """Shared event loop; ``next_community()`` assigns arriving nodes."""
    state = _Growth(community_count)

    # One seed node per community keeps every homophilic pool non-empty;
    # chaining the seeds (plus attaching every arrival) keeps the graph
    # connected throughout.
    for c in range(community_count):
        v = state.add_node(c)
        if v > 0:
            state.add_edge(v, rng.randrange(v))

    while len(state.community) < n:
        if rng.random() < p_node:
            c = next_community()
            same = community_count == 1 or rng.random() < homophily
            target = _pick_endpoint(
                state, rng, c, same, use_pa=rng.random() < p_pa, exclude=None
            )
            v = state.add_node(c)
            if target is not None:
                state.add_edge(v, target)
            continue

        if len(state.community) < 2:
            continue
        src = rng.randrange(len(state.community))
        own = state.community[src]
        same = community_count == 1 or rng.random() < homophily

        cand = None
        if rng.random() < p_triad and state.nbr_lists[src]:
            for _ in range(12):
                nb = state.nbr_lists[src][rng.randrange(len(state.nbr_lists[src]))]
                step = state.nbr_lists[nb][rng.randrange(len(state.nbr_lists[nb]))]
                if step == src or step in state.nbr_sets[src]:
                    continue
                if (state.community[step] == own) != same:
                    continue
                cand = step
                break
        if cand is None:
            use_pa = rng.random() < p_pa
            for _ in range(30):
                pick = _pick_endpoint(state, rng, own, same, use_pa, exclude=src)
                if pick is None:
                    break
                if pick in state.nbr_sets[src]:
                    continue
                cand = pick
                break
        if cand is not None:
            state.add_edge(src, cand)

    return state.edges, state.community


def generate_hichba(config: HichBaConfig) -> tuple[Graph, Partition]:
    """Grow a homophilic preferential-attachment network."""
    config.validate()
    rng = random.Random(config.seed)
    weights = config.community_weights
    cum = []
    acc = 0.0
    for w in weights:
        acc += w
        cum.append(acc)
    cum[-1] = 1.0

    def next_community() -> int:
        u = rng.random()
        for c, edge in enumerate(cum):
            if u < edge:
                return c
        return len(cum) - 1

    edges, community = _grow(
        config.n, len(weights), next_community, config.homophily,
        config.p_node, config.p_triad, config.p_pa, rng,
    )
    return Graph(config.n, set(edges)), Partition(community)


def generate_two_community(majority: int, minority: int, homophily: float = 0.9,
                           seed: int = 0, p_node: float = 0.1,
                           p_triad: float = 0.3, p_pa: float = 0.8) -> tuple[Graph, Partition]:
    """Homophilic two-community network with exact group sizes.

    The arrival sequence is a seeded shuffle of exactly ``majority - 1``
    and ``minority - 1`` community labels (one seed node each), so the
    final sizes are exact rather than multinomial.
    """
    if majority < 1 or minority < 1:
        raise ConfigError("both communities need at least one node")
    rng = random.Random(seed)
    arrivals = [0] * (majority - 1) + [1] * (minority - 1)
    rng.shuffle(arrivals)
    queue = iter(arrivals)

    edges, community = _grow(
        majority + minority, 2, lambda: next(queue), homophily,
        p_node, p_triad, p_pa, rng,
    )
    return Graph(majority + minority, set(edges)), Partition(community)


def generate_single_community(n: int, seed: int = 0, p_node: float = 0.1,
                              p_triad: float = 0.3, p_pa: float = 0.8) -> Graph:
    """Single dense community used by the node-removal behavior sweep."""
    cfg = HichBaConfig(
        n=n, community_weights=(1.0,), homophily=1.0,
        p_node=p_node, p_triad=p_triad, p_pa=p_pa, seed=seed,
    )
    graph, _ = generate_hichba(cfg)
    return graph
