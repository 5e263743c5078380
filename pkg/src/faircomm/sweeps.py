"""Metric-behavior sweeps: node removal and majority/minority swaps.

Both reproduce the controlled-misclassification experiments at desk
scale: scores are tracked as the prediction degrades step by step, with
the edge-based score reported as a mean/min/max band over repeated
random draws (20 by default).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigError
from . import fairness
from .generators import generate_single_community, generate_two_community
from .graph import Graph
from .partition import Partition


@dataclass(frozen=True)
class RemovalStep:
    removed: int
    fccn: float
    f1: float
    fcce_mean: float
    fcce_min: float
    fcce_max: float


def _spread_steps(last: int, steps: int | None) -> list[int]:
    if steps is None or steps >= last + 1:
        return list(range(last + 1))
    if steps < 2:
        raise ConfigError("need at least 2 sweep steps")
    return sorted({round(i * last / (steps - 1)) for i in range(steps)})


def sweep_removal(graph: Graph, steps: int | None = None, reps: int = 20,
                  seed: int = 0) -> list[RemovalStep]:
    """Remove k random nodes from a single ground-truth community.

    The prediction at step k is the community minus k uniformly chosen
    nodes. FCCN and F1 depend only on k; FCCE depends on which nodes
    leave, so it is aggregated over ``reps`` independent draws.
    """
    n = graph.node_count
    all_nodes = frozenset(range(n))
    rng = random.Random(seed)
    rows = []
    for k in _spread_steps(n, steps):
        fccn_value = fairness.fccn(all_nodes, _drop(all_nodes, k, rng))
        f1_value = fairness.f1(all_nodes, _drop(all_nodes, k, rng))
        fcce_values = [
            fairness.fcce(graph, all_nodes, _drop(all_nodes, k, rng))
            for _ in range(reps)
        ]
        rows.append(
            RemovalStep(
                removed=k,
                fccn=fccn_value,
                f1=f1_value,
                fcce_mean=sum(fcce_values) / len(fcce_values),
                fcce_min=min(fcce_values),
                fcce_max=max(fcce_values),
            )
        )
    return rows


def _drop(nodes: frozenset, k: int, rng: random.Random) -> frozenset:
    if k > len(nodes):
        raise ConfigError(f"cannot remove {k} of {len(nodes)} nodes")
    return nodes - frozenset(rng.sample(sorted(nodes), k))


def removal_base_graph(n: int = 256, seed: int = 0, p_node: float = 0.05) -> Graph:
    """Dense single-community network for the removal sweep."""
    return generate_single_community(n, seed=seed, p_node=p_node)


@dataclass(frozen=True)
class SwapStep:
    swapped: int
    flipped: bool
    fccn_majority: float
    fccn_minority: float
    f1_majority: float
    f1_minority: float
    fcce_majority_mean: float
    fcce_majority_min: float
    fcce_majority_max: float
    fcce_minority_mean: float
    fcce_minority_min: float
    fcce_minority_max: float
    phi_size_fccn: float | None
    phi_size_f1: float | None
    phi_size_fcce: float | None


def sweep_swap(majority: int = 70, minority: int = 40, homophily: float = 0.9,
               steps: int | None = None, reps: int = 20,
               seed: int = 0) -> list[SwapStep]:
    """Progressively exchange k nodes between two communities.

    At each step the first k nodes of a fixed shuffled order move from
    the majority into the minority-labeled prediction and vice versa,
    the prediction is re-mapped, and the size-fairness values recorded.
    ``flipped`` marks steps where greedy matching crosses the two
    communities. FCCE bands aggregate ``reps`` independent swap draws.
    """
    if minority > majority:
        raise ConfigError("minority must not exceed majority")
    graph, gt = generate_two_community(majority, minority, homophily, seed=seed)
    maj_nodes = sorted(gt.communities[0])
    min_nodes = sorted(gt.communities[1])

    rng = random.Random(seed)
    maj_order = rng.sample(maj_nodes, len(maj_nodes))
    min_order = rng.sample(min_nodes, len(min_nodes))

    rows = []
    for k in _spread_steps(minority, steps):
        pred = _swapped_partition(graph, maj_nodes, min_nodes,
                                  maj_order[:k], min_order[:k])
        report = fairness.fairness_report(graph, gt, pred, seed=seed)
        mapped = report.mapping.as_dict()
        flipped = mapped[0] != 0

        fcce_maj = []
        fcce_min = []
        for rep in range(reps):
            rep_rng = random.Random(seed * 1_000_003 + k * 1009 + rep)
            pm = rep_rng.sample(maj_nodes, k)
            pn = rep_rng.sample(min_nodes, k)
            rep_pred = _swapped_partition(graph, maj_nodes, min_nodes, pm, pn)
            rep_map = fairness.map_communities(gt, rep_pred, seed=seed).as_dict()
            for gi, bucket in ((0, fcce_maj), (1, fcce_min)):
                pj = rep_map[gi]
                members = rep_pred.communities[pj] if pj is not None else None
                bucket.append(
                    fairness.fcce(graph, gt.communities[gi], members) or 0.0
                )

        def cell_phi(metric):
            cell = report.cell(metric, "size")
            return cell.phi if cell.status == fairness.STATUS_OK else None

        scores = {s.index: s for s in report.scores}
        rows.append(
            SwapStep(
                swapped=k,
                flipped=flipped,
                fccn_majority=scores[0].fccn,
                fccn_minority=scores[1].fccn,
                f1_majority=scores[0].f1,
                f1_minority=scores[1].f1,
                fcce_majority_mean=sum(fcce_maj) / len(fcce_maj),
                fcce_majority_min=min(fcce_maj),
                fcce_majority_max=max(fcce_maj),
                fcce_minority_mean=sum(fcce_min) / len(fcce_min),
                fcce_minority_min=min(fcce_min),
                fcce_minority_max=max(fcce_min),
                phi_size_fccn=cell_phi("fccn"),
                phi_size_f1=cell_phi("f1"),
                phi_size_fcce=cell_phi("fcce"),
            )
        )
    return rows


def _swapped_partition(graph: Graph, maj_nodes, min_nodes,
                       out_of_majority, out_of_minority) -> Partition:
    to_minority = set(out_of_majority)
    to_majority = set(out_of_minority)
    pred_majority = (set(maj_nodes) - to_minority) | to_majority
    pred_minority = (set(min_nodes) - to_majority) | to_minority
    return Partition.from_communities(
        [pred_majority, pred_minority], graph.node_count
    )
