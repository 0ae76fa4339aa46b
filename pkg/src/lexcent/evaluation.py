"""Compare centrality rankings against SIR ground truth: Kendall tau,
top-x% overlap, rank-vs-score series, and the LSC-vs-GC runtime benchmark.
"""

from __future__ import annotations

import json
import math
import platform
import time
from dataclasses import dataclass
from typing import IO, Callable, Sequence

import numpy as np

from .centrality import compute_centrality
from .graph import Graph
from .ranking import NodeRanking, lsc, ranking_from_scores
from .sir import SirParams, mean_scores, score_all_nodes

EVAL_MEASURES = ("DC", "EC", "CC", "BC", "GC", "LSC")


def _tie_pair_count(values: Sequence) -> int:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return sum(c * (c - 1) // 2 for c in counts.values())


def _merge_count_inversions(values: list) -> int:
    """Count pairs i < j with values[i] > values[j] (strict), by mergesort."""
    n = len(values)
    if n < 2:
        return 0
    inversions = 0
    src = list(values)
    dst = [None] * n
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    inversions += mid - i
                    dst[k] = src[j]
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            dst[k : k + mid - i] = src[i:mid]
            k += mid - i
            dst[k : k + hi - j] = src[j:hi]
        src, dst = dst, src
        width *= 2
    return inversions


def _tau_from_counts(
    concordant: int, discordant: int, pairs: int, ties_a: int, ties_b: int, variant: str
) -> float:
    numerator = concordant - discordant
    if variant == "a":
        return numerator / pairs
    if variant == "b":
        denom = math.sqrt((pairs - ties_a) * (pairs - ties_b))
        return numerator / denom if denom else math.nan
    raise ValueError(f"unknown tau variant {variant!r}")


def _validate_tau_inputs(a: Sequence[float], b: Sequence[float]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise ValueError("kendall tau requires at least 2 items")
    return len(a)


def kendall_tau(a: Sequence[float], b: Sequence[float], variant: str = "a") -> float:
    """Kendall rank correlation via merge-count, O(N log N).

    A pair of indices is concordant when both lists order it the same strict
    way, discordant when opposite, and neither when tied in either list.
    Variant "a" divides (concordant - discordant) by N(N-1)/2, so ties shrink
    |tau|; variant "b" rescales by the tie-corrected denominator (NaN when
    either list is constant).
    """
    n = _validate_tau_inputs(a, b)
    pairs = n * (n - 1) // 2
    order = sorted(range(n), key=lambda i: (a[i], b[i]))
    a_sorted = [a[i] for i in order]
    b_sorted = [b[i] for i in order]
    # sorting secondarily by b puts tied-a runs in ascending b order, so the
    # inversion count below never charges a pair that is tied in a
    discordant = _merge_count_inversions(b_sorted)
    ties_a = _tie_pair_count(a_sorted)
    ties_b = _tie_pair_count(b_sorted)
    ties_both = _tie_pair_count(list(zip(a_sorted, b_sorted)))
    concordant = pairs - ties_a - ties_b + ties_both - discordant
    return _tau_from_counts(concordant, discordant, pairs, ties_a, ties_b, variant)


def kendall_tau_pairwise(
    a: Sequence[float], b: Sequence[float], variant: str = "a"
) -> float:
    """Reference O(N^2) Kendall tau; must agree exactly with kendall_tau."""
    n = _validate_tau_inputs(a, b)
    pairs = n * (n - 1) // 2
    concordant = discordant = ties_a = ties_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = (a[i] > a[j]) - (a[i] < a[j])
            db = (b[i] > b[j]) - (b[i] < b[j])
            if da == 0:
                ties_a += 1
            if db == 0:
                ties_b += 1
            if da == 0 or db == 0:
                continue
            if da == db:
                concordant += 1
            else:
                discordant += 1
    return _tau_from_counts(concordant, discordant, pairs, ties_a, ties_b, variant)


def top_x_overlap(
    ranking: NodeRanking, scores: Sequence[float], x_percent: float
) -> tuple[int, int]:
    """Overlap between the ranking's top k and the top k nodes by score,
    where k = floor(n * x_percent / 100).

    Score ties are broken by descending score then ascending node id.
    Returns (overlap, k).
    """
    if not 0 < x_percent <= 100:
        raise ValueError("x_percent must be in (0, 100]")
    arr = np.asarray(scores, dtype=np.float64)
    n = arr.size
    if n != len(ranking.ordered_nodes):
        raise ValueError("ranking and scores cover different node counts")
    k = int(n * x_percent / 100.0)
    if k == 0:
        raise ValueError(f"x_percent={x_percent} selects 0 of {n} nodes")
    truth_order = np.lexsort((np.arange(n), -arr))
    truth = set(int(i) for i in truth_order[:k])
    top = set(ranking.ordered_nodes[:k])
    return len(top & truth), k


def rank_vs_score_series(
    ranking: NodeRanking, scores: Sequence[float]
) -> tuple[list[tuple[int, float]], int]:
    """Scores reordered by ranking position, for plotting.

    Returns (series, adjacent_inversions) where series[i] = (i, score of the
    node ranked i) and adjacent_inversions counts positions where the score
    strictly increases from one rank to the next (0 for a perfect ranking).
    """
    arr = np.asarray(scores, dtype=np.float64)
    if arr.size != len(ranking.ordered_nodes):
        raise ValueError("ranking and scores cover different node counts")
    series = [(i, float(arr[node])) for i, node in enumerate(ranking.ordered_nodes)]
    inversions = sum(
        1 for i in range(len(series) - 1) if series[i + 1][1] > series[i][1]
    )
    return series, inversions


@dataclass(frozen=True)
class BenchmarkResult:
    mean_seconds: dict[str, float]
    runs_seconds: dict[str, list[float]]
    repetitions: int
    metadata: dict


def _measure_callable(tag: str, settings: dict) -> Callable[[Graph], object]:
    tag = tag.upper()
    if tag == "LSC":
        return lambda g: lsc(
            g,
            precision=settings.get("precision", 5),
            measure_order=settings.get("measure_order", ("DC", "EC", "CC")),
            rounding=settings.get("rounding", "half_even"),
            cc_convention=settings.get("cc_convention", "component_scaled"),
            ec_tol=settings.get("ec_tol", 1e-8),
            ec_max_iter=settings.get("ec_max_iter", 1000),
            gc_radius=settings.get("gc_radius", 3),
            gc_exponent=settings.get("gc_exponent", 2),
        )
    return lambda g: compute_centrality(
        g,
        tag,
        cc_convention=settings.get("cc_convention", "component_scaled"),
        ec_tol=settings.get("ec_tol", 1e-8),
        ec_max_iter=settings.get("ec_max_iter", 1000),
        gc_radius=settings.get("gc_radius", 3),
        gc_exponent=settings.get("gc_exponent", 2),
    )


def benchmark_runtime(
    g: Graph,
    measures: Sequence[str],
    repetitions: int = 1,
    **settings,
) -> BenchmarkResult:
    """Mean wall-clock seconds per measure over ``repetitions`` runs.

    Runs strictly serially; one untimed warmup run per measure is discarded
    first. LSC timings include its component measure computations, the
    rounding step, and the sort.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    runs: dict[str, list[float]] = {}
    for tag in measures:
        fn = _measure_callable(tag, settings)
        fn(g)  # cold-cache warmup, discarded
        timings = []
        for _ in range(repetitions):
            start = time.perf_counter()
            fn(g)
            timings.append(time.perf_counter() - start)
        runs[tag.upper()] = timings
    means = {tag: sum(ts) / len(ts) for tag, ts in runs.items()}
    metadata = {
        "python": platform.python_version(),
        "platform": platform.platform(),
        "machine": platform.machine(),
        "node_count": g.node_count,
        "edge_count": g.edge_count,
    }
    return BenchmarkResult(means, runs, repetitions, metadata)


@dataclass(frozen=True)
class EvalReport:
    """Per-measure agreement with SIR ground truth on one dataset."""

    dataset: str
    beta: float
    gamma: float
    replications: int
    rng_seed: int
    x_percent: float
    node_count: int
    measures: dict[str, dict]
    tau_variant: str = "a"
    runtime_seconds: dict[str, float] | None = None

    def to_json(self) -> str:
        payload = {
            "dataset": self.dataset,
            "beta": self.beta,
            "gamma": self.gamma,
            "replications": self.replications,
            "rng_seed": self.rng_seed,
            "x_percent": self.x_percent,
            "node_count": self.node_count,
            "tau_variant": self.tau_variant,
            "measures": self.measures,
        }
        if self.runtime_seconds is not None:
            payload["runtime_seconds"] = self.runtime_seconds
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write_csv(self, stream: IO[str]) -> None:
        stream.write("dataset,measure,tau,top_x_overlap,top_x_k\n")
        for tag in EVAL_MEASURES:
            if tag not in self.measures:
                continue
            row = self.measures[tag]
            stream.write(
                f"{self.dataset},{tag},{row['tau']:.12g},"
                f"{row['top_x_overlap']},{row['top_x_k']}\n"
            )


def lsc_rank_values(ranking: NodeRanking) -> np.ndarray:
    """Per-node comparison values for an order-only ranking: the negated rank
    position, so larger means more influential (usable directly in tau)."""
    values = np.empty(len(ranking.ordered_nodes), dtype=np.float64)
    for position, node in enumerate(ranking.ordered_nodes):
        values[node] = -float(position)
    return values


def evaluate_dataset(
    g: Graph,
    params: SirParams,
    x_percent: float = 5.0,
    dataset: str = "",
    tau_variant: str = "a",
    threads: int = 1,
    precision: int = 5,
    measure_order: Sequence[str] = ("DC", "EC", "CC"),
    rounding: str = "half_even",
    sir_results: Sequence | None = None,
    **measure_settings,
) -> EvalReport:
    """Full ranking-evaluation pipeline for one graph.

    Computes the five competitor centralities plus LSC, Monte-Carlo SIR
    spreading scores for every node, and per measure: Kendall tau between the
    measure's values and the SIR scores (LSC contributes negated rank
    positions), and the top-x% overlap against the SIR top-k. Precomputed
    ``sir_results`` (from score_all_nodes with the same params) are reused
    when given.
    """
    if sir_results is None:
        sir_results = score_all_nodes(g, params, threads=threads)
    ground_truth = mean_scores(sir_results)
    report_rows: dict[str, dict] = {}
    for tag in ("DC", "EC", "CC", "BC", "GC"):
        vec = compute_centrality(g, tag, **measure_settings)
        tau = kendall_tau(vec.scores.tolist(), ground_truth.tolist(), tau_variant)
        overlap, k = top_x_overlap(
            ranking_from_scores(vec.scores, tag), ground_truth, x_percent
        )
        report_rows[tag] = {"tau": tau, "top_x_overlap": overlap, "top_x_k": k}
    lsc_ranking = lsc(
        g,
        precision=precision,
        measure_order=measure_order,
        rounding=rounding,
        **measure_settings,
    )
    lsc_values = lsc_rank_values(lsc_ranking)
    tau = kendall_tau(lsc_values.tolist(), ground_truth.tolist(), tau_variant)
    overlap, k = top_x_overlap(lsc_ranking, ground_truth, x_percent)
    report_rows["LSC"] = {"tau": tau, "top_x_overlap": overlap, "top_x_k": k}
    return EvalReport(
        dataset=dataset,
        beta=params.beta,
        gamma=params.gamma,
        replications=params.replications,
        rng_seed=params.rng_seed,
        x_percent=x_percent,
        node_count=g.node_count,
        measures=report_rows,
        tau_variant=tau_variant,
    )
