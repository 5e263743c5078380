"""Acceptance gate: every shipping criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
per-criterion timings.
"""

import csv
import math
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

import faircomm as fc
from faircomm.cli import main as cli_main
from faircomm.fairness import STATUS_OK
from faircomm.omega import count_tables_exact
from faircomm.sweeps import removal_base_graph, sweep_removal, sweep_swap

from test_validation import oracle_ari, oracle_nmi, oracle_ri
from test_omega import brute_count, partitions_of
from test_results_cli import DATA, INGEST_GOLDEN


@contextmanager
def criterion(name):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.1f}s)")
        raise
    print(f"\nACCEPTANCE {name}: PASS ({time.perf_counter() - start:.1f}s)")


# -- shared expensive fixtures -------------------------------------------------


@pytest.fixture(scope="module")
def mmin_network():
    return fc.generate_hichba(fc.hichba_mmin_config(n=10_000, seed=0))


@pytest.fixture(scope="module")
def mmaj_network():
    return fc.generate_hichba(fc.hichba_mmaj_config(n=10_000, seed=0))


# -- 1. worked example ---------------------------------------------------------


def test_worked_example_phi():
    with criterion("worked-example-phi"):
        value = fc.phi(0.70)
        assert value == pytest.approx((2 / math.pi) * math.atan(0.70), abs=1e-9)
        assert abs(round(value, 2) - 0.39) < 1e-3
        assert f"{value:.2f}" == "0.39"


# -- 2. perfect-prediction identity suite -------------------------------------


def _identity_networks():
    nets = []
    for mu in (0.15, 0.3, 0.45):
        for sizes in ((150, 100, 80, 70), None):
            for seed in (0, 1):
                cfg = fc.PlantedPartitionConfig(
                    n=400, mixing=mu, avg_degree=10,
                    community_sizes=sizes, min_community=40, seed=seed,
                )
                nets.append(fc.generate_planted(cfg))
    for weights in (fc.hichba_mmaj_config().community_weights,
                    fc.hichba_mmin_config().community_weights):
        for seed in (0, 1):
            cfg = fc.HichBaConfig(n=500, community_weights=weights, seed=seed)
            nets.append(fc.generate_hichba(cfg))
    for weights in ((0.5, 0.25, 0.15, 0.1), (0.4, 0.3, 0.3)):
        for seed in (3, 4):
            cfg = fc.HichBaConfig(n=400, community_weights=weights, seed=seed)
            nets.append(fc.generate_hichba(cfg))
    return nets


def test_perfect_prediction_identity_suite():
    with criterion("perfect-prediction-identity"):
        networks = _identity_networks()
        assert len(networks) == 20
        for graph, gt in networks:
            row, report = fc.evaluate_pair(graph, gt, gt, seed=0,
                                           network="id", method="self")
            assert row.nmi == 1.0
            assert row.ari == 1.0
            assert row.pf1 == 1.0
            assert row.nf1 == 1.0
            assert row.rmi == pytest.approx(1.0, abs=1e-6)
            for key, cell in report.cells.items():
                if cell.status == STATUS_OK:
                    assert abs(cell.phi) <= 1e-12, (key, cell.phi)


# -- 3. oracle equivalence (exhaustive small-n) --------------------------------


def _set_partitions(n):
    """All partitions of range(n) via restricted growth strings."""
    labels = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(labels)
            return
        for c in range(used + 1):
            labels[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def _check_metric_trio(gt, pred):
    assert fc.nmi(gt, pred) == pytest.approx(oracle_nmi(gt, pred), abs=1e-9)
    assert fc.rand_index(gt, pred) == pytest.approx(oracle_ri(gt, pred), abs=1e-9)
    assert fc.ari(gt, pred) == pytest.approx(oracle_ari(gt, pred), abs=1e-9)


def test_oracle_equivalence_exhaustive():
    with criterion("oracle-equivalence"):
        # full cross product up to n = 6
        for n in range(2, 7):
            parts = [fc.Partition.from_labels(p) for p in _set_partitions(n)]
            for gt in parts:
                for pred in parts:
                    _check_metric_trio(gt, pred)
        # n = 7, 8: the metrics are functions of the contingency table,
        # which only depends on the ground truth through its size
        # multiset, so one canonical ground truth per integer partition
        # of n against every prediction covers every pair up to node
        # relabeling (the oracles are relabeling-equivariant).
        for n in (7, 8):
            preds = [fc.Partition.from_labels(p) for p in _set_partitions(n)]
            for shape in partitions_of(n):
                labels = []
                for c, size in enumerate(shape):
                    labels.extend([c] * size)
                gt = fc.Partition.from_labels(labels)
                for pred in preds:
                    _check_metric_trio(gt, pred)

        # contingency-table counts: exact DP vs full enumeration
        assert count_tables_exact((2, 2), (2, 2)) == 3
        for n in range(2, 9):
            for a in partitions_of(n):
                for b in partitions_of(n):
                    assert count_tables_exact(a, b) == brute_count(a, b)
        for n in (9, 10):
            for a in partitions_of(n):
                for b in partitions_of(n):
                    if count_tables_exact(a, b) <= 20_000:
                        assert count_tables_exact(a, b) == brute_count(a, b)


# -- 4. metric-behavior reproduction (desk scale) ------------------------------


def test_metric_behavior_sweeps():
    with criterion("metric-behavior-sweeps"):
        graph = removal_base_graph(200, seed=0)
        n = graph.node_count
        rows = sweep_removal(graph, steps=None, reps=5, seed=0)
        for row in rows:
            assert row.fccn == (n - row.removed) / n
        f1s = [r.f1 for r in rows]
        assert all(a >= b for a, b in zip(f1s, f1s[1:]))

        swaps = sweep_swap(majority=70, minority=40, homophily=0.9,
                           steps=None, reps=5, seed=0)
        flags = [r.flipped for r in swaps]
        transitions = [i for i in range(1, len(flags)) if flags[i] != flags[i - 1]]
        assert len(transitions) == 1
        k_star = swaps[transitions[0]].swapped
        assert 0.5 <= k_star / 40 <= 0.8
        for row in swaps:
            if row.flipped:
                assert abs(row.phi_size_f1) <= 0.1


# -- 5. generator statistics ----------------------------------------------------


def test_generator_statistics(mmin_network, mmaj_network):
    with criterion("generator-statistics"):
        for mu in (0.2, 0.4, 0.6):
            for seed in range(10):
                cfg = fc.PlantedPartitionConfig(
                    n=1000, mixing=mu, avg_degree=16,
                    min_community=20, seed=seed,
                )
                graph, gt = fc.generate_planted(cfg)
                assert abs(fc.cut_fraction(graph, gt) - mu) <= 0.03, (mu, seed)

        _, gt_min = mmin_network
        largest_min = max(gt_min.community_sizes())
        assert 8500 <= largest_min <= 9300, largest_min

        _, gt_maj = mmaj_network
        largest_maj = max(gt_maj.community_sizes())
        assert 2700 <= largest_maj <= 3400, largest_maj


# -- 6. property-correlation sign checks ----------------------------------------


def test_property_correlation_signs(mmin_network):
    with criterion("property-correlation-signs"):
        graph, gt = mmin_network
        props = fc.community_properties(graph, gt)
        sizes = [p.size for p in props]
        densities = [p.density for p in props]
        conductances = [p.conductance for p in props]
        assert all(c is not None for c in conductances)
        assert fc.pearson_correlation(sizes, densities) < 0
        assert fc.pearson_correlation(sizes, conductances) < 0


# -- 7. end-to-end benchmark -----------------------------------------------------


def test_end_to_end_bench(tmp_path, capsys):
    with criterion("end-to-end-bench"):
        out = tmp_path / "bench"
        code = cli_main([
            "bench", "--model", "planted", "--n", "1000", "--mu", "0.2",
            "--avg-degree", "16", "--min-community", "20",
            "--methods", "lpa,cnm", "--seeds", "0,1,2,3,4,5,6,7,8,9",
            "--out-dir", str(out),
        ])
        capsys.readouterr()
        assert code in (0, 3)
        with (out / "results.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 20
        by_method = {"lpa": [], "cnm": []}
        for row in rows:
            by_method[row["method"]].append(float(row["nmi"]))
            for prop in ("size", "density", "conductance"):
                for metric in ("fccn", "f1", "fcce"):
                    assert row[f"status_{metric}_{prop}"] == "ok", row
                    value = float(row[f"phi_{metric}_{prop}"])
                    assert -1.0 < value < 1.0
        assert sum(by_method["cnm"]) / 10 >= 0.5
        assert sum(by_method["lpa"]) / 10 >= 0.5


# -- 8. scope note + ingestion golden rows --------------------------------------


def test_ingestion_fixture_replaces_full_survey():
    with criterion("ingestion-golden-rows"):
        readme = (Path(__file__).parent.parent / "README.md").read_text()
        assert "not reproduced" in readme.lower()
        graph = fc.load_graph(DATA / "golden30.edges")
        gt = fc.load_partition(DATA / "golden30.gt", graph)
        for name, expected in INGEST_GOLDEN.items():
            pred = fc.load_partition(DATA / "ingest" / f"{name}.pred", graph)
            row, _ = fc.evaluate_pair(graph, gt, pred, seed=0,
                                      network="golden30", method=name)
            got = (row.nmi, row.rmi, row.ari, row.pf1, row.nf1)
            assert got == pytest.approx(expected, abs=1e-12), name
