"""Command-line benchmark harness.

Subcommands: ``generate``, ``detect``, ``evaluate``, ``bench``,
``sweep``, ``correlate``. Exit codes: 0 success, 2 input or
configuration error, 3 run completed but some metric was undefined
(rows carry explicit statuses), 4 internal error.

Any long option can also be supplied through a TOML file passed with
``--config`` (table named after the subcommand, or top-level keys);
``FAIRCOMM_SEED`` overrides the built-in default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # py < 3.11
    import tomli as tomllib

from . import detectors, generators, sweeps
from .errors import (
    ConfigError,
    EdgeListParseError,
    FaircommError,
    NodeSetMismatchError,
    PartitionCoverageError,
    UndefinedValueError,
)
from .graph import load_graph, write_edge_list
from .partition import load_partition, write_partition
from .properties import community_properties, pearson_correlation
from .results import (
    aggregate_rows,
    append_rows_csv,
    evaluate_pair,
    write_aggregates_csv,
)
from .validation import DEFAULT_RMI_EXACT_THRESHOLD

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNDEFINED = 3
EXIT_INTERNAL = 4


def _default_seed() -> int:
    return int(os.environ.get("FAIRCOMM_SEED", "0"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faircomm",
        description="Benchmark the group fairness of community detection results.",
    )
    parser.add_argument("--config", type=Path, default=None,
                        help="TOML file providing defaults for any option")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic network + ground truth")
    gen.add_argument("--model", choices=["planted", "hichba"])
    gen.add_argument("--out", type=Path,
                     help="output prefix; writes <out>.edges, <out>.gt, <out>.json")
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--mu", type=float, default=None, help="planted mixing fraction")
    gen.add_argument("--avg-degree", type=float, default=None)
    gen.add_argument("--max-degree", type=int, default=None)
    gen.add_argument("--min-community", type=int, default=None)
    gen.add_argument("--tau2", type=float, default=None,
                     help="community size power-law exponent")
    gen.add_argument("--sizes", type=str, default=None,
                     help="explicit comma-separated community sizes")
    gen.add_argument("--preset", choices=["mmaj", "mmin", "lfr-like"], default=None)
    gen.add_argument("--weights", type=str, default=None,
                     help="hichba community weights, comma separated")
    gen.add_argument("--homophily", type=float, default=None)
    gen.add_argument("--p-node", type=float, default=None)
    gen.add_argument("--p-triad", type=float, default=None)
    gen.add_argument("--p-pa", type=float, default=None)

    det = sub.add_parser("detect", help="run a builtin detector")
    det.add_argument("--graph", type=Path)
    det.add_argument("--method", choices=list(detectors.BUILTIN_DETECTORS))
    det.add_argument("--reps", type=int, default=1)
    det.add_argument("--seed", type=int, default=None)
    det.add_argument("--out-dir", type=Path)

    ev = sub.add_parser("evaluate", help="score one prediction against ground truth")
    ev.add_argument("--graph", type=Path)
    ev.add_argument("--gt", type=Path)
    ev.add_argument("--pred", type=Path)
    ev.add_argument("--seed", type=int, default=None)
    ev.add_argument("--network", default=None, help="network id for the CSV row")
    ev.add_argument("--method", default=None, help="method id for the CSV row")
    ev.add_argument("--csv", type=Path, default=None, help="append the row here")
    ev.add_argument("--mapping-out", type=Path, default=None,
                    help="write the community mapping as JSON")
    ev.add_argument("--include-unmapped", default=None,
                    choices=["true", "false"],
                    help="include unmapped communities in regressions (default true)")
    ev.add_argument("--rmi-exact-threshold", type=int, default=None)

    be = sub.add_parser("bench", help="networks x methods x seeds result table")
    be.add_argument("--out-dir", type=Path)
    be.add_argument("--model", choices=["planted", "hichba", "files"], default=None)
    be.add_argument("--graph", type=Path, default=None, help="edge list (model=files)")
    be.add_argument("--gt", type=Path, default=None, help="ground truth (model=files)")
    be.add_argument("--network-name", default=None)
    be.add_argument("--n", type=int, default=None)
    be.add_argument("--mu", type=float, default=None)
    be.add_argument("--avg-degree", type=float, default=None)
    be.add_argument("--min-community", type=int, default=None)
    be.add_argument("--preset", choices=["mmaj", "mmin"], default=None)
    be.add_argument("--methods", default=None,
                    help="comma-separated builtin methods (lpa,cnm)")
    be.add_argument("--ingest", type=Path, default=None,
                    help="directory of partition files treated as one method each")
    be.add_argument("--seeds", default=None,
                    help="comma-separated or a-b range of network seeds")
    be.add_argument("--reps", type=int, default=None,
                    help="repetitions per stochastic method (default 1)")
    be.add_argument("--include-unmapped", default=None, choices=["true", "false"])
    be.add_argument("--rmi-exact-threshold", type=int, default=None)

    sw = sub.add_parser("sweep", help="metric-behavior traces")
    sw.add_argument("--kind", choices=["removal", "swap"])
    sw.add_argument("--out", type=Path)
    sw.add_argument("--seed", type=int, default=None)
    sw.add_argument("--steps", type=int, default=None)
    sw.add_argument("--reps", type=int, default=None, help="FCCE repetitions (default 20)")
    sw.add_argument("--nodes", type=int, default=None, help="removal community size")
    sw.add_argument("--p-node", type=float, default=None,
                    help="removal base-graph node-event probability; lower "
                         "means denser (0.0114 reproduces the ~90k-edge, "
                         "1024-node setting)")
    sw.add_argument("--majority", type=int, default=None)
    sw.add_argument("--minority", type=int, default=None)
    sw.add_argument("--homophily", type=float, default=None)

    co = sub.add_parser("correlate", help="Pearson matrix of community properties")
    co.add_argument("--graph", type=Path)
    co.add_argument("--gt", type=Path)
    co.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if args.config is None:
        return
    if not args.config.exists():
        raise ConfigError(f"config file not found: {args.config}")
    with args.config.open("rb") as fh:
        data = tomllib.load(fh)
    scoped = dict(data.get(args.command, {}))
    for key, value in data.items():
        if not isinstance(value, dict):
            scoped.setdefault(key, value)
    for key, value in scoped.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ConfigError(f"unknown config key {key!r} for {args.command}")
        if getattr(args, dest) in (None,):
            if dest in ("out", "out_dir", "graph", "gt", "pred", "csv",
                        "mapping_out", "ingest"):
                value = Path(value)
            setattr(args, dest, value)


def _resolved_seed(value) -> int:
    return _default_seed() if value is None else value


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        flags = ", ".join(f"--{n}" for n in missing)
        raise ConfigError(f"{args.command} requires {flags} (flag or config file)")


def _flag(value, default=True) -> bool:
    if value is None:
        return default
    return value == "true"


# -- subcommand implementations ---------------------------------------------


def _cmd_generate(args) -> int:
    _require(args, "model", "out")
    seed = _resolved_seed(args.seed)
    if args.model == "planted":
        if args.preset == "lfr-like":
            cfg = generators.planted_lfr_like_config(
                args.mu if args.mu is not None else 0.2,
                n=args.n or 10_000, seed=seed,
            )
        else:
            sizes = None
            if args.sizes:
                sizes = tuple(int(s) for s in args.sizes.split(","))
            cfg = generators.PlantedPartitionConfig(
                n=args.n or 1000,
                mixing=args.mu if args.mu is not None else 0.2,
                avg_degree=args.avg_degree or 16.0,
                community_sizes=sizes,
                size_exponent=args.tau2 or 2.5,
                min_community=args.min_community or 20,
                max_degree=args.max_degree,
                seed=seed,
            )
        graph, gt = generators.generate_planted(cfg)
        echo = asdict(cfg)
    else:
        if args.preset == "mmaj":
            cfg = generators.hichba_mmaj_config(n=args.n or 10_000, seed=seed)
        elif args.preset == "mmin":
            cfg = generators.hichba_mmin_config(n=args.n or 10_000, seed=seed)
        else:
            if not args.weights:
                raise ConfigError("hichba needs --preset or --weights")
            weights = tuple(float(w) for w in args.weights.split(","))
            cfg = generators.HichBaConfig(
                n=args.n or 1000,
                community_weights=weights,
                homophily=args.homophily if args.homophily is not None else 0.9,
                p_node=args.p_node if args.p_node is not None else 0.1,
                p_triad=args.p_triad if args.p_triad is not None else 0.3,
                p_pa=args.p_pa if args.p_pa is not None else 0.8,
                seed=seed,
            )
        graph, gt = generators.generate_hichba(cfg)
        echo = asdict(cfg)

    out = args.out
    out.parent.mkdir(parents=True, exist_ok=True)
    edges_path = out.parent / (out.name + ".edges")
    gt_path = out.parent / (out.name + ".gt")
    echo_path = out.parent / (out.name + ".json")
    write_edge_list(graph, edges_path)
    write_partition(gt, graph, gt_path)
    echo["model"] = args.model
    echo_path.write_text(json.dumps(echo, indent=2) + "\n")
    print(f"wrote {edges_path} "
          f"({graph.node_count} nodes, {graph.edge_count} edges, "
          f"{gt.community_count} communities)")
    return EXIT_OK


def _cmd_detect(args) -> int:
    _require(args, "graph", "method", "out-dir")
    graph = load_graph(args.graph)
    seed = _resolved_seed(args.seed)
    run = detectors.run_detector(graph, args.method, seed=seed, reps=args.reps)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for r, part in enumerate(run.partitions):
        path = args.out_dir / f"{args.method}_rep{r}.pred"
        write_partition(part, graph, path)
        print(f"{path}: {part.community_count} communities "
              f"({run.wall_times[r] * 1000:.1f} ms)")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    _require(args, "graph", "gt", "pred")
    graph = load_graph(args.graph)
    gt = load_partition(args.gt, graph)
    pred = load_partition(args.pred, graph)
    seed = _resolved_seed(args.seed)
    row, report = evaluate_pair(
        graph, gt, pred,
        seed=seed,
        network=args.network or args.graph.stem,
        method=args.method or args.pred.stem,
        include_unmapped=_flag(args.include_unmapped),
        rmi_exact_threshold=args.rmi_exact_threshold or DEFAULT_RMI_EXACT_THRESHOLD,
    )
    obj = row.as_json_obj()
    obj["communities"] = [s.as_json_obj() for s in report.scores]
    print(json.dumps(obj, indent=2))
    if args.csv:
        append_rows_csv(args.csv, [row])
    if args.mapping_out:
        args.mapping_out.write_text(
            json.dumps(report.mapping.to_json_obj(), indent=2) + "\n"
        )
    return EXIT_OK if row.all_cells_ok() else EXIT_UNDEFINED


def _parse_seeds(spec: str | None) -> list[int]:
    if not spec:
        return [_default_seed()]
    spec = str(spec)
    if "-" in spec and "," not in spec:
        lo, hi = spec.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in spec.split(",")]


def _bench_networks(args, seeds):
    """Yield (network_id, family, graph, gt, seed) per bench instance.

    Generator models produce one network instance per seed; with fixed
    input files the same network repeats and the seed only varies the
    stochastic detectors.
    """
    if args.model == "files" or (args.model is None and args.graph):
        if not (args.graph and args.gt):
            raise ConfigError("bench with files needs --graph and --gt")
        graph = load_graph(args.graph)
        gt = load_partition(args.gt, graph)
        name = args.network_name or args.graph.stem
        for s in seeds:
            yield name, name, graph, gt, s
        return
    if args.model == "hichba":
        if not args.preset:
            raise ConfigError("bench hichba needs --preset mmaj|mmin")
        family = args.network_name or f"hichba-{args.preset}"
        maker = (generators.hichba_mmaj_config if args.preset == "mmaj"
                 else generators.hichba_mmin_config)
        for s in seeds:
            graph, gt = generators.generate_hichba(maker(n=args.n or 10_000, seed=s))
            yield f"{family}-s{s}", family, graph, gt, s
        return
    mu = args.mu if args.mu is not None else 0.2
    family = args.network_name or f"planted-mu{mu:g}"
    for s in seeds:
        cfg = generators.PlantedPartitionConfig(
            n=args.n or 1000,
            mixing=mu,
            avg_degree=args.avg_degree or 16.0,
            min_community=args.min_community or 20,
            seed=s,
        )
        graph, gt = generators.generate_planted(cfg)
        yield f"{family}-s{s}", family, graph, gt, s


def _cmd_bench(args) -> int:
    _require(args, "out-dir")
    seeds = _parse_seeds(args.seeds)
    if len(set(seeds)) != len(seeds):
        raise ConfigError("seeds must be distinct")
    reps = args.reps or 1
    if reps < 1:
        raise ConfigError("reps must be >= 1")
    methods = [m.strip() for m in (args.methods or "").split(",") if m.strip()]
    for m in methods:
        if m not in detectors.BUILTIN_DETECTORS:
            raise ConfigError(f"unknown builtin method {m!r}")
    ingest_files = []
    if args.ingest:
        if not args.ingest.is_dir():
            raise ConfigError(f"ingest path is not a directory: {args.ingest}")
        ingest_files = sorted(args.ingest.glob("*.pred")) + sorted(
            args.ingest.glob("*.labels")
        )
        if not ingest_files:
            raise ConfigError(f"no .pred or .labels files in {args.ingest}")
    if not methods and not ingest_files:
        raise ConfigError("bench needs --methods and/or --ingest")

    include_unmapped = _flag(args.include_unmapped)
    threshold = args.rmi_exact_threshold or DEFAULT_RMI_EXACT_THRESHOLD

    rows = []
    failures = []
    families = {}
    for network_id, family, graph, gt, net_seed in _bench_networks(args, seeds):
        families[network_id] = family
        for method in methods:
            # CNM is fully deterministic, so repetitions add nothing.
            method_reps = reps if method == "lpa" else 1
            for rep in range(method_reps):
                run_seed = net_seed * 1000 + rep if method_reps > 1 else net_seed
                try:
                    pred = (
                        detectors.label_propagation(graph, seed=run_seed)
                        if method == "lpa"
                        else detectors.greedy_modularity(graph)
                    )
                    row, _ = evaluate_pair(
                        graph, gt, pred,
                        seed=run_seed,
                        network=network_id,
                        method=method,
                        include_unmapped=include_unmapped,
                        rmi_exact_threshold=threshold,
                    )
                    rows.append(row)
                except FaircommError as exc:
                    failures.append((network_id, method, run_seed, str(exc)))
        for path in ingest_files:
            try:
                pred = load_partition(path, graph)
                row, _ = evaluate_pair(
                    graph, gt, pred,
                    seed=net_seed,
                    network=network_id,
                    method=path.stem,
                    include_unmapped=include_unmapped,
                    rmi_exact_threshold=threshold,
                )
                rows.append(row)
            except FaircommError as exc:
                failures.append((network_id, path.stem, net_seed, str(exc)))

    rows.sort(key=lambda r: (r.network, r.method, r.seed))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    results_path = args.out_dir / "results.csv"
    results_path.unlink(missing_ok=True)
    append_rows_csv(results_path, rows)
    aggregates = aggregate_rows(rows, family_of=lambda net: families.get(net, net))
    write_aggregates_csv(args.out_dir / "aggregates.csv", aggregates)
    print(f"wrote {len(rows)} rows and {len(aggregates)} aggregates to {args.out_dir}")
    for network_id, method, s, message in failures:
        print(f"FAILED {network_id} {method} seed={s}: {message}", file=sys.stderr)
    if failures:
        return EXIT_INTERNAL
    if any(not r.all_cells_ok() for r in rows):
        return EXIT_UNDEFINED
    return EXIT_OK


def _cmd_sweep(args) -> int:
    _require(args, "kind", "out")
    seed = _resolved_seed(args.seed)
    reps = args.reps or 20
    args.out.parent.mkdir(parents=True, exist_ok=True)
    if args.kind == "removal":
        graph = sweeps.removal_base_graph(
            args.nodes or 256, seed=seed,
            p_node=args.p_node if args.p_node is not None else 0.05,
        )
        rows = sweeps.sweep_removal(graph, steps=args.steps, reps=reps, seed=seed)
        header = "removed,fccn,f1,fcce_mean,fcce_min,fcce_max"
        lines = [header] + [
            f"{r.removed},{r.fccn!r},{r.f1!r},{r.fcce_mean!r},{r.fcce_min!r},{r.fcce_max!r}"
            for r in rows
        ]
    else:
        rows = sweeps.sweep_swap(
            majority=args.majority or 70,
            minority=args.minority or 40,
            homophily=args.homophily if args.homophily is not None else 0.9,
            steps=args.steps,
            reps=reps,
            seed=seed,
        )
        header = (
            "swapped,flipped,fccn_majority,fccn_minority,f1_majority,f1_minority,"
            "fcce_majority_mean,fcce_majority_min,fcce_majority_max,"
            "fcce_minority_mean,fcce_minority_min,fcce_minority_max,"
            "phi_size_fccn,phi_size_f1,phi_size_fcce"
        )

        def opt(x):
            return "" if x is None else repr(x)

        lines = [header] + [
            ",".join([
                str(r.swapped),
                str(r.flipped).lower(),
                repr(r.fccn_majority),
                repr(r.fccn_minority),
                repr(r.f1_majority),
                repr(r.f1_minority),
                repr(r.fcce_majority_mean),
                repr(r.fcce_majority_min),
                repr(r.fcce_majority_max),
                repr(r.fcce_minority_mean),
                repr(r.fcce_minority_min),
                repr(r.fcce_minority_max),
                opt(r.phi_size_fccn),
                opt(r.phi_size_f1),
                opt(r.phi_size_fcce),
            ])
            for r in rows
        ]
    args.out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 1} sweep rows to {args.out}")
    return EXIT_OK


def _cmd_correlate(args) -> int:
    _require(args, "graph", "gt")
    graph = load_graph(args.graph)
    gt = load_partition(args.gt, graph)
    props = community_properties(graph, gt)
    columns = {
        "size": [float(p.size) for p in props],
        "density": [p.density for p in props],
        "conductance": [p.conductance for p in props],
    }
    names = list(columns)
    lines = ["property," + ",".join(names)]
    any_undefined = False
    for a in names:
        cells = []
        for b in names:
            if a == b:
                cells.append("1.0")
                continue
            pairs = [
                (x, y)
                for x, y in zip(columns[a], columns[b])
                if x is not None and y is not None
            ]
            try:
                if len(pairs) < 3:
                    raise UndefinedValueError("fewer than 3 communities")
                value = pearson_correlation(
                    [p[0] for p in pairs], [p[1] for p in pairs]
                )
                cells.append(repr(value))
            except (UndefinedValueError, ValueError):
                cells.append("undefined")
                any_undefined = True
        lines.append(f"{a}," + ",".join(cells))
    text = "\n".join(lines) + "\n"
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_UNDEFINED if any_undefined else EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "detect": _cmd_detect,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
    "sweep": _cmd_sweep,
    "correlate": _cmd_correlate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return _COMMANDS[args.command](args)
    except (EdgeListParseError, PartitionCoverageError, ConfigError,
            NodeSetMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UndefinedValueError as exc:
        print(f"undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except FaircommError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
