"""Result rows, the versioned CSV contract, and aggregation.

The column set and order below are the stable interface consumed by the
plotting component and external analysis; change them only together
with ``CSV_SCHEMA_VERSION`` and the golden-row fixtures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .fairness import (
    PROPERTY_NAMES,
    SCORE_METRICS,
    STATUS_OK,
    FairnessReport,
    fairness_report,
)
from .graph import Graph
from .partition import Partition
from .validation import DEFAULT_RMI_EXACT_THRESHOLD, validation_scores

CSV_SCHEMA_VERSION = 1

PHI_COLUMNS = [
    f"phi_{metric}_{prop}" for prop in PROPERTY_NAMES for metric in SCORE_METRICS
]
STATUS_COLUMNS = [
    f"status_{metric}_{prop}" for prop in PROPERTY_NAMES for metric in SCORE_METRICS
]
BASE_METRICS = ["nmi", "rmi", "ari", "pf1", "nf1"]

CSV_COLUMNS = (
    ["network", "method", "seed"]
    + BASE_METRICS
    + PHI_COLUMNS
    + STATUS_COLUMNS
    + ["n_gt_communities", "n_pred_communities", "rmi_path"]
)


@dataclass(frozen=True)
class ResultRow:
    """One evaluated (network, method, seed) cell."""

    network: str
    method: str
    seed: int
    nmi: float
    rmi: float
    ari: float
    pf1: float
    nf1: float
    phi: dict  # (metric, property) -> float | None
    status: dict  # (metric, property) -> str
    n_gt_communities: int
    n_pred_communities: int
    rmi_path: str

    def all_cells_ok(self) -> bool:
        return all(s == STATUS_OK for s in self.status.values())

    def as_json_obj(self) -> dict:
        obj = {
            "network": self.network,
            "method": self.method,
            "seed": self.seed,
            "nmi": self.nmi,
            "rmi": self.rmi,
            "ari": self.ari,
            "pf1": self.pf1,
            "nf1": self.nf1,
            "n_gt_communities": self.n_gt_communities,
            "n_pred_communities": self.n_pred_communities,
            "rmi_path": self.rmi_path,
            "phi": {},
        }
        for prop in PROPERTY_NAMES:
            for metric in SCORE_METRICS:
                obj["phi"][f"{metric}_{prop}"] = {
                    "value": self.phi[(metric, prop)],
                    "status": self.status[(metric, prop)],
                }
        return obj

    def to_csv_values(self) -> list[str]:
        values = [self.network, self.method, str(self.seed)]
        values += [_fmt(getattr(self, m)) for m in BASE_METRICS]
        values += [
            _fmt(self.phi[(metric, prop)])
            for prop in PROPERTY_NAMES
            for metric in SCORE_METRICS
        ]
        values += [
            self.status[(metric, prop)]
            for prop in PROPERTY_NAMES
            for metric in SCORE_METRICS
        ]
        values += [
            str(self.n_gt_communities),
            str(self.n_pred_communities),
            self.rmi_path,
        ]
        return values


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def evaluate_pair(
    graph: Graph,
    gt: Partition,
    pred: Partition,
    seed: int = 0,
    network: str = "",
    method: str = "",
    include_unmapped: bool = True,
    rmi_exact_threshold: int = DEFAULT_RMI_EXACT_THRESHOLD,
) -> tuple[ResultRow, FairnessReport]:
    """Full evaluation of one prediction against the ground truth."""
    scores = validation_scores(gt, pred, rmi_exact_threshold)
    report = fairness_report(graph, gt, pred, seed=seed, include_unmapped=include_unmapped)
    phi = {}
    status = {}
    for key, cell in report.cells.items():
        phi[key] = cell.phi if cell.status == STATUS_OK else None
        status[key] = cell.status
    row = ResultRow(
        network=network,
        method=method,
        seed=seed,
        nmi=scores.nmi,
        rmi=scores.rmi,
        ari=scores.ari,
        pf1=scores.pf1,
        nf1=scores.nf1,
        phi=phi,
        status=status,
        n_gt_communities=gt.community_count,
        n_pred_communities=pred.community_count,
        rmi_path=scores.rmi_path,
    )
    return row, report


def csv_header() -> str:
    return ",".join(CSV_COLUMNS)


def row_to_csv_line(row: ResultRow) -> str:
    return ",".join(row.to_csv_values())


def append_rows_csv(path, rows) -> None:
    """Append rows, writing the header when the file is new or empty."""
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8") as fh:
        if fresh:
            fh.write(csv_header() + "\n")
        for row in rows:
            fh.write(row_to_csv_line(row) + "\n")


# -- aggregation -------------------------------------------------------------


AGG_COLUMNS = (
    ["network", "method", "n_rows"]
    + [f"{m}_{stat}" for m in BASE_METRICS for stat in ("mean", "std", "std_between")]
    + [f"{c}_{stat}" for c in PHI_COLUMNS for stat in ("mean", "std", "n_ok")]
)


def _mean(xs) -> float:
    return sum(xs) / len(xs)


def _std(xs) -> float:
    if len(xs) < 2:
        return 0.0
    mu = _mean(xs)
    return math.sqrt(sum((x - mu) ** 2 for x in xs) / (len(xs) - 1))


def aggregate_rows(rows, family_of=lambda network: network) -> list[dict]:
    """Mean and spread per (network family, method).

    ``std`` pools every row; ``std_between`` is the spread of the
    per-network-instance means, separating network variability from
    detector stochasticity when methods run repeatedly per network.
    """
    groups: dict[tuple[str, str], list[ResultRow]] = {}
    for row in rows:
        groups.setdefault((family_of(row.network), row.method), []).append(row)

    out = []
    for (family, method), members in sorted(groups.items()):
        record: dict = {
            "network": family,
            "method": method,
            "n_rows": len(members),
        }
        for metric in BASE_METRICS:
            values = [getattr(r, metric) for r in members]
            by_instance: dict[str, list[float]] = {}
            for r in members:
                by_instance.setdefault(r.network, []).append(getattr(r, metric))
            instance_means = [_mean(v) for v in by_instance.values()]
            record[f"{metric}_mean"] = _mean(values)
            record[f"{metric}_std"] = _std(values)
            record[f"{metric}_std_between"] = _std(instance_means)
        for prop in PROPERTY_NAMES:
            for metric in SCORE_METRICS:
                key = (metric, prop)
                col = f"phi_{metric}_{prop}"
                ok_values = [
                    r.phi[key] for r in members if r.status[key] == STATUS_OK
                ]
                record[f"{col}_mean"] = _mean(ok_values) if ok_values else None
                record[f"{col}_std"] = _std(ok_values) if ok_values else None
                record[f"{col}_n_ok"] = len(ok_values)
        out.append(record)
    return out


def write_aggregates_csv(path, aggregates) -> None:
    lines = [",".join(AGG_COLUMNS)]
    for record in aggregates:
        cells = []
        for col in AGG_COLUMNS:
            value = record[col]
            if value is None:
                cells.append("")
            elif isinstance(value, float):
                cells.append(repr(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
