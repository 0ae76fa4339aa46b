"""Command-line interface.

Subcommands: centrality, sir, evaluate, bench, fetch, stats. Every run
resolves its settings into a RunConfig (defaults < --config file < explicit
flags), validates them up front, writes the resolved config next to the
outputs as run_config.json, and emits deterministic CSV/JSON: identical
configs (including rng_seed) produce byte-identical files regardless of
--threads. Errors exit nonzero with a single 'error: ...' line on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import datasets
from .centrality import compute_centrality, write_centrality_csv
from .evaluation import (
    EVAL_MEASURES,
    benchmark_runtime,
    evaluate_dataset,
    lsc_rank_values,
    rank_vs_score_series,
)
from .graph import Graph, dataset_stats, generate_barabasi_albert, load_edge_list
from .ranking import (
    DEFAULT_MEASURE_ORDER,
    DEFAULT_PRECISION,
    ROUND_HALF_EVEN_MODE,
    build_ranking_matrix,
    lexical_sort,
    lsc,
    ranking_from_scores,
    ranking_to_json,
    write_ranking_csv,
    write_ranking_matrix_csv,
)
from .sir import (
    SirParams,
    mean_scores,
    score_all_nodes,
    spread_curve,
    write_curve_csv,
    write_scores_csv,
)

VALUE_MEASURES = ("dc", "ec", "cc", "bc", "gc")


@dataclass
class RunConfig:
    """Resolved settings for one command invocation; round-trips through
    JSON so a dumped config reproduces the run exactly."""

    command: str = ""
    dataset: str | None = None          # registry name
    graph: str | None = None            # edge-list path
    generate: str | None = None         # "ba:<n>:<m>:<seed>"
    relabel: bool = True
    data_dir: str = "data"
    output_dir: str = "out"
    measures: list[str] = dataclasses.field(default_factory=lambda: ["lsc"])
    beta: float | None = None
    gamma: float = 1.0
    replications: int = 1000
    rng_seed: int = 0
    max_steps: int | None = None
    seeds: list[int] | None = None
    seeds_from: str | None = None
    top: int = 10
    precision: int = DEFAULT_PRECISION
    measure_order: list[str] = dataclasses.field(
        default_factory=lambda: list(DEFAULT_MEASURE_ORDER)
    )
    rounding: str = ROUND_HALF_EVEN_MODE
    cc_convention: str = "component_scaled"
    ec_tol: float = 1e-8
    ec_max_iter: int = 1000
    gc_radius: int = 3
    gc_exponent: int = 2
    x_percent: float = 5.0
    tau_variant: str = "a"
    repetitions: int = 1
    threads: int = 1
    force: bool = False

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2) + "\n"

    def validate(self) -> None:
        """Cheap precondition checks for every field, before any real work."""
        if not 0 <= self.precision <= 15:
            raise ValueError("precision must be between 0 and 15")
        if self.rounding not in ("half_even", "truncate"):
            raise ValueError(f"unknown rounding mode {self.rounding!r}")
        known = set(VALUE_MEASURES) | {"lsc"}
        for m in self.measures:
            if m not in known and self.command != "fetch":
                raise ValueError(f"unknown measure {m!r}")
        for tag in self.measure_order:
            if tag.lower() not in VALUE_MEASURES:
                raise ValueError(f"unknown measure {tag!r} in measure order")
        if self.beta is not None and not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [0, 1]")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must be in (0, 1]")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.max_steps is not None and self.max_steps < 0:
            raise ValueError("steps must be >= 0")
        if not 0.0 < self.x_percent <= 100.0:
            raise ValueError("x-percent must be in (0, 100]")
        if self.tau_variant not in ("a", "b"):
            raise ValueError("tau variant must be 'a' or 'b'")
        if self.cc_convention not in ("component_scaled", "paper_literal"):
            raise ValueError(f"unknown closeness convention {self.cc_convention!r}")
        if self.gc_radius < 1:
            raise ValueError("gc-radius must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.repetitions < 1:
            raise ValueError("reps must be >= 1")
        if self.top < 1:
            raise ValueError("top must be >= 1")

    def measure_settings(self) -> dict:
        return {
            "cc_convention": self.cc_convention,
            "ec_tol": self.ec_tol,
            "ec_max_iter": self.ec_max_iter,
            "gc_radius": self.gc_radius,
            "gc_exponent": self.gc_exponent,
        }


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if getattr(args, "config", None):
        loaded = json.loads(Path(args.config).read_text())
        unknown = set(loaded) - {f.name for f in dataclasses.fields(RunConfig)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in loaded.items():
            setattr(config, key, value)
    for key, value in vars(args).items():
        if key in ("config", "func") or value is None:
            continue
        if hasattr(config, key):
            setattr(config, key, value)
    config.command = args.command
    config.measures = [m.lower() for m in config.measures]
    config.measure_order = [m.upper() for m in config.measure_order]
    return config


def _load_graph(config: RunConfig) -> Graph:
    sources = [s for s in (config.dataset, config.graph, config.generate) if s]
    if len(sources) != 1:
        raise ValueError("specify exactly one of --dataset, --graph, --generate")
    if config.generate:
        parts = config.generate.split(":")
        if len(parts) != 4 or parts[0] != "ba":
            raise ValueError(
                f"bad generator spec {config.generate!r}; expected ba:<n>:<m>:<seed>"
            )
        n, m, seed = (int(p) for p in parts[1:])
        return generate_barabasi_albert(n, m, seed)
    if config.dataset:
        return datasets.load_dataset(config.dataset, config.data_dir)
    path = Path(config.graph)
    if not path.exists():
        raise FileNotFoundError(f"graph file not found: {path}")
    return load_edge_list(path.read_text(), relabel=config.relabel)


def _sir_params(config: RunConfig) -> SirParams:
    beta = config.beta
    if beta is None and config.dataset:
        beta = datasets.default_beta(config.dataset)
    if beta is None:
        raise ValueError("--beta is required (no dataset default applies)")
    return SirParams(
        beta=beta,
        gamma=config.gamma,
        replications=config.replications,
        rng_seed=config.rng_seed,
        max_steps=config.max_steps,
    )


def _outdir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "run_config.json").write_text(config.to_json())
    return out


def _write(path: Path, writer) -> None:
    with open(path, "w", newline="\n") as stream:
        writer(stream)


def _write_labels(g: Graph, out: Path) -> None:
    if g.labels is None:
        return
    with open(out / "node_labels.csv", "w", newline="\n") as stream:
        stream.write("node,label\n")
        for node, label in enumerate(g.labels):
            stream.write(f"{node},{label}\n")


def _dataset_tag(config: RunConfig) -> str:
    return config.dataset or config.generate or Path(config.graph or "graph").stem


def cmd_centrality(config: RunConfig) -> None:
    g = _load_graph(config)
    out = _outdir(config)
    _write_labels(g, out)
    for measure in config.measures:
        if measure == "lsc":
            vectors = [
                compute_centrality(g, tag, **config.measure_settings())
                for tag in config.measure_order
            ]
            rm = build_ranking_matrix(vectors, config.precision, config.rounding)
            ranking = lexical_sort(rm)
            _write(out / "ranking_lsc.csv", lambda s: write_ranking_csv(ranking, s))
            (out / "ranking_lsc.json").write_text(ranking_to_json(ranking) + "\n")
            _write(out / "ranking_matrix.csv", lambda s: write_ranking_matrix_csv(rm, s))
        elif measure in VALUE_MEASURES:
            vec = compute_centrality(g, measure, **config.measure_settings())
            _write(
                out / f"centrality_{measure}.csv",
                lambda s, v=vec: write_centrality_csv([v], s),
            )
        else:
            raise ValueError(f"unknown measure {measure!r}")
    print(f"wrote centrality outputs for {_dataset_tag(config)} to {out}")


def cmd_sir(config: RunConfig) -> None:
    g = _load_graph(config)
    params = _sir_params(config)
    out = _outdir(config)
    _write_labels(g, out)
    curve_mode = config.seeds is not None or config.seeds_from is not None
    if curve_mode:
        if params.max_steps is None:
            raise ValueError("curve mode requires --steps")
        if config.seeds is not None:
            seeds = list(config.seeds)
            tag = "seeds"
        else:
            source = config.seeds_from.lower()
            if source == "lsc":
                ranking = lsc(
                    g,
                    precision=config.precision,
                    measure_order=config.measure_order,
                    rounding=config.rounding,
                    **config.measure_settings(),
                )
            elif source in VALUE_MEASURES:
                vec = compute_centrality(g, source, **config.measure_settings())
                ranking = ranking_from_scores(vec.scores, source.upper())
            else:
                raise ValueError(f"unknown --seeds-from measure {config.seeds_from!r}")
            seeds = list(ranking.ordered_nodes[: config.top])
            tag = source
        result = spread_curve(g, seeds, params)
        _write(out / f"sir_curve_{tag}.csv", lambda s: write_curve_csv(result, s))
        print(f"wrote spread curve for seeds {seeds} to {out}")
    else:
        results = score_all_nodes(g, params, threads=config.threads)
        _write(out / "sir_scores.csv", lambda s: write_scores_csv(results, s))
        print(f"wrote per-node SIR scores for {_dataset_tag(config)} to {out}")


def cmd_evaluate(config: RunConfig) -> None:
    g = _load_graph(config)
    params = _sir_params(config)
    out = _outdir(config)
    _write_labels(g, out)
    results = score_all_nodes(g, params, threads=config.threads)
    report = evaluate_dataset(
        g,
        params,
        x_percent=config.x_percent,
        dataset=_dataset_tag(config),
        tau_variant=config.tau_variant,
        threads=config.threads,
        precision=config.precision,
        measure_order=config.measure_order,
        rounding=config.rounding,
        sir_results=results,
        **config.measure_settings(),
    )
    (out / "eval_report.json").write_text(report.to_json())
    _write(out / "eval_report.csv", report.write_csv)
    # rank-vs-score series per measure (plot-ready), plus inversion summary
    truth = mean_scores(results)
    _write(out / "sir_scores.csv", lambda s: write_scores_csv(results, s))
    inversions: dict[str, int] = {}
    for tag in EVAL_MEASURES:
        if tag == "LSC":
            ranking = lsc(
                g,
                precision=config.precision,
                measure_order=config.measure_order,
                rounding=config.rounding,
                **config.measure_settings(),
            )
        else:
            vec = compute_centrality(g, tag, **config.measure_settings())
            ranking = ranking_from_scores(vec.scores, tag)
        series, count = rank_vs_score_series(ranking, truth)
        inversions[tag] = count

        def _writer(stream, r=ranking, ser=series):
            stream.write("index,node,score\n")
            for (idx, score), node in zip(ser, r.ordered_nodes):
                stream.write(f"{idx},{node},{score:.12g}\n")

        _write(out / f"rank_vs_score_{tag.lower()}.csv", _writer)
    _write(
        out / "inversions.csv",
        lambda s: s.write(
            "measure,adjacent_inversions\n"
            + "".join(f"{t},{c}\n" for t, c in inversions.items())
        ),
    )
    print(f"wrote evaluation report for {_dataset_tag(config)} to {out}")


def cmd_bench(config: RunConfig) -> None:
    g = _load_graph(config)
    out = _outdir(config)
    result = benchmark_runtime(
        g,
        config.measures,
        repetitions=config.repetitions,
        precision=config.precision,
        measure_order=config.measure_order,
        rounding=config.rounding,
        **config.measure_settings(),
    )

    def _writer(stream):
        stream.write("measure,mean_seconds,repetitions\n")
        for tag, mean in result.mean_seconds.items():
            stream.write(f"{tag},{mean:.6f},{result.repetitions}\n")

    _write(out / "benchmark.csv", _writer)
    payload = {
        "mean_seconds": result.mean_seconds,
        "runs_seconds": result.runs_seconds,
        "repetitions": result.repetitions,
        "metadata": result.metadata,
    }
    (out / "benchmark.json").write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    for tag, mean in result.mean_seconds.items():
        print(f"{tag}: {mean:.4f} s (mean of {result.repetitions})")


def cmd_stats(config: RunConfig) -> None:
    g = _load_graph(config)
    stats = dataset_stats(g)
    out = _outdir(config)

    def _writer(stream):
        stream.write("nodes,edges,mean_degree,max_degree,density\n")
        stream.write(
            f"{stats.node_count},{stats.edge_count},{stats.mean_degree:.7g},"
            f"{stats.max_degree},{stats.density:.7g}\n"
        )

    _write(out / "stats.csv", _writer)
    print(
        f"{_dataset_tag(config)}: nodes={stats.node_count} edges={stats.edge_count} "
        f"mean_degree={stats.mean_degree:.4f} max_degree={stats.max_degree} "
        f"density={stats.density:.7f}"
    )


def cmd_fetch(config: RunConfig, names: list[str]) -> None:
    if names == ["all"]:
        names = [n for n, info in datasets.REGISTRY.items() if not info.bundled]
    for name in names:
        path = datasets.fetch(name, config.data_dir, force=config.force)
        print(f"{name}: ready at {path}")


def _add_common_args(parser: argparse.ArgumentParser, *, needs_graph: bool) -> None:
    parser.add_argument("--config", help="JSON RunConfig file; flags override it")
    parser.add_argument("--out", dest="output_dir", help="output directory")
    if needs_graph:
        parser.add_argument("--dataset", help="registered dataset name")
        parser.add_argument("--graph", help="edge-list file path")
        parser.add_argument("--generate", help="synthetic graph spec ba:<n>:<m>:<seed>")
        parser.add_argument(
            "--no-relabel",
            dest="relabel",
            action="store_const",
            const=False,
            help="require integer 0-based node ids instead of relabeling",
        )
        parser.add_argument("--data-dir", dest="data_dir", help="fetched dataset directory")


def _add_measure_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--precision", type=int, help="decimal places for LSC rounding")
    parser.add_argument(
        "--rounding", choices=["half_even", "truncate"], help="LSC rounding mode"
    )
    parser.add_argument(
        "--measure-order",
        dest="measure_order",
        type=lambda s: s.split(","),
        help="comma-separated LSC measure order (default dc,ec,cc)",
    )
    parser.add_argument(
        "--cc-convention",
        dest="cc_convention",
        choices=["component_scaled", "paper_literal"],
    )
    parser.add_argument("--ec-tol", dest="ec_tol", type=float)
    parser.add_argument("--ec-max-iter", dest="ec_max_iter", type=int)
    parser.add_argument("--gc-radius", dest="gc_radius", type=int)
    parser.add_argument("--gc-exponent", dest="gc_exponent", type=int)


def _add_sir_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, help="per-contact infection probability")
    parser.add_argument("--gamma", type=float, help="per-step recovery probability")
    parser.add_argument("--reps", dest="replications", type=int, help="Monte-Carlo replications")
    parser.add_argument("--seed", dest="rng_seed", type=int, help="master RNG seed")
    parser.add_argument("--threads", type=int, help="worker threads (results identical)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexcent",
        description="Lexical sorting centrality and SIR spreading evaluation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="compute centrality scores / LSC ranking")
    _add_common_args(p, needs_graph=True)
    _add_measure_args(p)
    p.add_argument(
        "--measures",
        type=lambda s: s.split(","),
        help="comma-separated measures: dc,ec,cc,bc,gc,lsc",
    )
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("sir", help="SIR spreading scores or multi-seed curves")
    _add_common_args(p, needs_graph=True)
    _add_measure_args(p)
    _add_sir_args(p)
    p.add_argument("--steps", dest="max_steps", type=int, help="step cap (curve length)")
    p.add_argument(
        "--seeds", type=lambda s: [int(t) for t in s.split(",")], help="explicit seed nodes"
    )
    p.add_argument(
        "--seeds-from", dest="seeds_from", help="take seeds from a measure's top ranks"
    )
    p.add_argument("--top", type=int, help="how many top nodes to seed (default 10)")
    p.set_defaults(func=cmd_sir)

    p = sub.add_parser("evaluate", help="full ranking-vs-SIR evaluation report")
    _add_common_args(p, needs_graph=True)
    _add_measure_args(p)
    _add_sir_args(p)
    p.add_argument("--x-percent", dest="x_percent", type=float, help="top-x%% cutoff")
    p.add_argument("--tau-variant", dest="tau_variant", choices=["a", "b"])
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="runtime benchmark of measures")
    _add_common_args(p, needs_graph=True)
    _add_measure_args(p)
    p.add_argument(
        "--measures", type=lambda s: s.split(","), help="measures to time (e.g. lsc,gc)"
    )
    p.add_argument("--reps", dest="repetitions", type=int, help="timed repetitions")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fetch", help="download registered datasets")
    _add_common_args(p, needs_graph=False)
    p.add_argument(
        "names", nargs="+", help="dataset names or 'all'", metavar="name"
    )
    p.add_argument("--data-dir", dest="data_dir")
    p.add_argument("--force", action="store_const", const=True)
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("stats", help="dataset summary statistics")
    _add_common_args(p, needs_graph=True)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
        config.validate()
        if args.command == "fetch":
            cmd_fetch(config, args.names)
        else:
            args.func(config)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
