"""Community-wise scores (FCCN, F1, FCCE) and the group fairness grid.

The fairness value for a (score metric, community property) cell is
``(2/pi) * arctan(slope)`` where ``slope`` is the least-squares slope of
the per-community score against the min-max normalized property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InsufficientDataError, NoVariationError, UndefinedValueError
from .graph import Graph
from .mapping import CommunityMapping, map_communities
from .partition import Partition
from .properties import community_density, community_conductance, normalize_property

SCORE_METRICS = ("fccn", "f1", "fcce")
PROPERTY_NAMES = ("size", "density", "conductance")

STATUS_OK = "ok"
STATUS_NO_VARIATION = "no-variation"
STATUS_INSUFFICIENT = "insufficient-data"


def fccn(gt_members, pred_members) -> float:
    """Fraction of ground-truth nodes captured by the mapped prediction."""
    gset = frozenset(gt_members)
    if not gset:
        raise UndefinedValueError("fccn of an empty ground-truth community")
    if pred_members is None:
        return 0.0
    return len(gset & frozenset(pred_members)) / len(gset)


def f1(gt_members, pred_members) -> float:
    """Overlap score 2|c ∩ p| / (|c| + |p|); penalizes extra nodes."""
    gset = frozenset(gt_members)
    if not gset:
        raise UndefinedValueError("f1 of an empty ground-truth community")
    if pred_members is None:
        return 0.0
    pset = frozenset(pred_members)
    return 2 * len(gset & pset) / (len(gset) + len(pset))


def fcce(graph: Graph, gt_members, pred_members) -> float | None:
    """Fraction of the community's internal edges kept by the prediction.

    An edge survives iff both endpoints are in the intersection, so the
    numerator is the internal edge count of ``gt ∩ pred``. Returns None
    (excluded) when the ground-truth community has no internal edges.
    """
    gset = frozenset(gt_members)
    gt_edges = graph.internal_edge_count(gset)
    if gt_edges == 0:
        return None
    if pred_members is None:
        return 0.0
    kept = graph.internal_edge_count(gset & frozenset(pred_members))
    return kept / gt_edges


def fit_slope(points) -> float:
    """Ordinary least-squares slope of y on x via the closed form."""
    pts = list(points)
    if len(pts) < 2:
        raise InsufficientDataError(f"need at least 2 points, got {len(pts)}")
    n = len(pts)
    mx = math.fsum(p[0] for p in pts) / n
    my = math.fsum(p[1] for p in pts) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pts)
    if sxx == 0.0:
        raise NoVariationError("slope undefined: zero variance in x")
    sxy = math.fsum((x - mx) * (y - my) for x, y in pts)
    return sxy / sxx


def phi(slope: float) -> float:
    """Map a regression slope onto the (-1, 1) fairness scale.

    ``(2/pi) * arctan(slope)``: 0 means every community is treated
    alike, positive values favor high-property communities, negative
    values favor low-property ones.
    """
    return (2.0 / math.pi) * math.atan(slope)


@dataclass(frozen=True)
class CommunityScore:
    """Scores and properties of one ground-truth community."""

    index: int
    size: int
    density: float
    conductance: float | None
    norm_size: float | None
    norm_density: float | None
    norm_conductance: float | None
    pred_index: int | None
    jaccard: float
    fccn: float
    f1: float
    fcce: float | None  # None when the community has no internal edges

    def as_json_obj(self) -> dict:
        return {
            "index": self.index,
            "size": self.size,
            "density": self.density,
            "conductance": self.conductance,
            "pred_index": self.pred_index,
            "jaccard": self.jaccard,
            "fccn": self.fccn,
            "f1": self.f1,
            "fcce": self.fcce,
        }


@dataclass(frozen=True)
class PhiCell:
    metric: str
    property_name: str
    status: str
    slope: float | None = None
    phi: float | None = None
    n_points: int = 0


@dataclass(frozen=True)
class FairnessReport:
    """The 3x3 fairness grid plus the per-community score table."""

    cells: dict = field(default_factory=dict)  # (metric, property) -> PhiCell
    scores: tuple = ()
    mapping: CommunityMapping | None = None
    include_unmapped: bool = True

    def cell(self, metric: str, property_name: str) -> PhiCell:
        return self.cells[(metric, property_name)]

    def phi_grid(self) -> dict:
        return {
            key: (cell.phi if cell.status == STATUS_OK else None)
            for key, cell in self.cells.items()
        }

    def to_json_obj(self) -> dict:
        return {
            "include_unmapped": self.include_unmapped,
            "cells": [
                {
                    "metric": c.metric,
                    "property": c.property_name,
                    "status": c.status,
                    "slope": c.slope,
                    "phi": c.phi,
                    "n_points": c.n_points,
                }
                for c in self.cells.values()
            ],
            "communities": [s.as_json_obj() for s in self.scores],
            "mapping": self.mapping.to_json_obj() if self.mapping else None,
        }


def _score_value(score: CommunityScore, metric: str) -> float | None:
    return getattr(score, metric)


def _norm_value(score: CommunityScore, property_name: str) -> float | None:
    return getattr(score, f"norm_{property_name}")


def fairness_report(
    graph: Graph,
    gt: Partition,
    pred: Partition,
    seed: int = 0,
    include_unmapped: bool = True,
) -> FairnessReport:
    """Run the full pipeline: map, score, normalize, regress.

    Properties are normalized over the ground-truth communities only.
    Communities mapped to the empty set score 0 and are included in the
    regressions unless ``include_unmapped`` is False; communities with
    no internal edges are excluded from FCCE cells, and zero-volume
    communities from conductance cells.
    """
    mapping = map_communities(gt, pred, seed=seed)
    pred_of = mapping.as_dict()
    jac_of = {p.gt_index: p.jaccard for p in mapping.pairs}

    sizes = []
    densities = []
    conductances = []
    for members in gt.communities:
        sizes.append(len(members))
        densities.append(community_density(graph, members))
        try:
            conductances.append(community_conductance(graph, members))
        except UndefinedValueError:
            conductances.append(None)

    def normalized(values):
        """Min-max over the communities with a defined value; returns
        (per-community values or None, whether any spread existed)."""
        defined = [v for v in values if v is not None]
        if not defined:
            return [None] * len(values), False
        scaled = normalize_property(defined)
        if scaled is None:
            return [None] * len(values), False
        it = iter(scaled)
        return [next(it) if v is not None else None for v in values], True

    norm_sizes, size_varies = normalized(sizes)
    norm_densities, density_varies = normalized(densities)
    norm_conductances, conductance_varies = normalized(conductances)

    scores = []
    for i, members in enumerate(gt.communities):
        pj = pred_of[i]
        pred_members = pred.communities[pj] if pj is not None else None
        scores.append(
            CommunityScore(
                index=i,
                size=sizes[i],
                density=densities[i],
                conductance=conductances[i],
                norm_size=norm_sizes[i],
                norm_density=norm_densities[i],
                norm_conductance=norm_conductances[i],
                pred_index=pj,
                jaccard=jac_of[i],
                fccn=fccn(members, pred_members),
                f1=f1(members, pred_members),
                fcce=fcce(graph, members, pred_members),
            )
        )

    raw_props = {"size": sizes, "density": densities, "conductance": conductances}
    prop_varies = {
        "size": size_varies,
        "density": density_varies,
        "conductance": conductance_varies,
    }
    cells = {}
    for metric in SCORE_METRICS:
        for prop in PROPERTY_NAMES:
            pts = []
            for s in scores:
                if not include_unmapped and s.pred_index is None:
                    continue
                y = _score_value(s, metric)
                if y is None or raw_props[prop][s.index] is None:
                    continue
                pts.append((_norm_value(s, prop), y))
            status = STATUS_OK
            slope_value = None
            phi_value = None
            if len(pts) < 2:
                status = STATUS_INSUFFICIENT
            elif not prop_varies[prop]:
                status = STATUS_NO_VARIATION
            else:
                try:
                    slope_value = fit_slope(pts)
                    phi_value = phi(slope_value)
                except NoVariationError:
                    # The cell's subset can be flat even when the full
                    # population is not (FCCE exclusions).
                    status = STATUS_NO_VARIATION
            cells[(metric, prop)] = PhiCell(
                metric=metric,
                property_name=prop,
                status=status,
                slope=slope_value,
                phi=phi_value,
                n_points=len(pts),
            )

    return FairnessReport(
        cells=cells,
        scores=tuple(scores),
        mapping=mapping,
        include_unmapped=include_unmapped,
    )
