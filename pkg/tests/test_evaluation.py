import json
import math
import random

import numpy as np
import pytest

from lexcent.evaluation import (
    benchmark_runtime,
    evaluate_dataset,
    kendall_tau,
    kendall_tau_pairwise,
    lsc_rank_values,
    rank_vs_score_series,
    top_x_overlap,
)
from lexcent.ranking import NodeRanking, ranking_from_scores
from lexcent.sir import SirParams

from test_graph import cycle_graph, random_graph
from test_centrality import star_graph


# ---------------------------------------------------------------------------
# kendall tau


def test_tau_identity_and_reverse():
    a = [1.0, 2.0, 3.0, 4.0]
    assert kendall_tau(a, a) == 1.0
    assert kendall_tau(a, a[::-1]) == -1.0


def test_tau_single_swap():
    assert kendall_tau([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3)
    assert kendall_tau_pairwise([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3)


def test_tau_validation():
    with pytest.raises(ValueError):
        kendall_tau([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        kendall_tau([1], [2])
    with pytest.raises(ValueError):
        kendall_tau([1, 2], [1, 2], variant="c")


def test_tau_constant_list_is_zero_under_variant_a():
    assert kendall_tau([5, 5, 5, 5], [1, 2, 3, 4]) == 0.0
    assert math.isnan(kendall_tau([5, 5, 5, 5], [1, 2, 3, 4], variant="b"))


def random_lists(rng, n, tie_prob):
    a = [rng.randrange(0, max(2, int(n * (1 - tie_prob)))) for _ in range(n)]
    b = [rng.randrange(0, max(2, int(n * (1 - tie_prob)))) for _ in range(n)]
    return a, b


def test_merge_equals_pairwise_exactly():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randrange(2, 60)
        for tie_prob in (0.0, 0.5, 0.9):
            a, b = random_lists(rng, n, tie_prob)
            for variant in ("a", "b"):
                fast = kendall_tau(a, b, variant)
                slow = kendall_tau_pairwise(a, b, variant)
                if math.isnan(fast):
                    assert math.isnan(slow)
                else:
                    assert fast == slow


def test_tau_symmetry_and_monotone_invariance():
    rng = random.Random(23)
    for _ in range(20):
        a = [rng.random() for _ in range(25)]
        b = [rng.random() for _ in range(25)]
        assert kendall_tau(a, b) == kendall_tau(b, a)
        transformed = [math.exp(3 * x) + 1 for x in a]
        assert kendall_tau(transformed, b) == kendall_tau(a, b)


def test_tau_b_matches_scipy():
    stats = pytest.importorskip("scipy.stats")
    rng = random.Random(29)
    for _ in range(20):
        a = [rng.randrange(0, 10) for _ in range(40)]
        b = [rng.randrange(0, 10) for _ in range(40)]
        expected = stats.kendalltau(a, b, variant="b").statistic
        assert kendall_tau(a, b, variant="b") == pytest.approx(expected, abs=1e-12)


# ---------------------------------------------------------------------------
# top-x overlap


def test_overlap_k_values():
    scores = list(range(1000))
    ranking = ranking_from_scores(scores, "DC")
    overlap, k = top_x_overlap(ranking, scores, 5)
    assert k == 50
    assert overlap == 50
    scores34 = list(range(34))
    overlap, k = top_x_overlap(ranking_from_scores(scores34, "DC"), scores34, 5)
    assert k == 1
    assert overlap == 1


def test_overlap_exact_order_is_full():
    rng = random.Random(3)
    scores = [rng.random() for _ in range(40)]
    ranking = ranking_from_scores(scores, "DC")
    overlap, k = top_x_overlap(ranking, scores, 25)
    assert overlap == k == 10


def test_overlap_invariant_under_scaling_and_full_at_100():
    rng = random.Random(5)
    scores = np.array([rng.random() for _ in range(30)])
    ranking = ranking_from_scores([rng.random() for _ in range(30)], "DC")
    a, _ = top_x_overlap(ranking, scores, 20)
    b, _ = top_x_overlap(ranking, scores * 1000.0, 20)
    assert a == b
    full, k = top_x_overlap(ranking, scores, 100)
    assert full == k == 30


def test_overlap_rejects_zero_k():
    scores = [1.0, 2.0, 3.0]
    ranking = ranking_from_scores(scores, "DC")
    with pytest.raises(ValueError):
        top_x_overlap(ranking, scores, 5)  # floor(3*0.05) == 0


# ---------------------------------------------------------------------------
# rank-vs-score series


def test_series_perfect_ranking_has_no_inversions():
    scores = [5.0, 3.0, 1.0, 4.0]
    ranking = ranking_from_scores(scores, "DC")
    series, inversions = rank_vs_score_series(ranking, scores)
    values = [s for _, s in series]
    assert values == sorted(values, reverse=True)
    assert inversions == 0


def test_series_reverse_ranking_is_nondecreasing():
    scores = [1.0, 2.0, 3.0]
    ranking = NodeRanking((0, 1, 2), "DC")
    series, inversions = rank_vs_score_series(ranking, scores)
    values = [s for _, s in series]
    assert values == sorted(values)
    assert inversions == 2


def test_series_inversions_match_adjacent_scan():
    rng = random.Random(7)
    scores = [rng.random() for _ in range(100)]
    order = list(range(100))
    rng.shuffle(order)
    ranking = NodeRanking(tuple(order), "DC")
    series, inversions = rank_vs_score_series(ranking, scores)
    expected = sum(
        1 for i in range(99) if scores[order[i + 1]] > scores[order[i]]
    )
    assert inversions == expected


# ---------------------------------------------------------------------------
# benchmark


def test_benchmark_single_rep_times_everything():
    g = random_graph(12, 0.4, random.Random(9))
    result = benchmark_runtime(g, ["dc", "lsc", "gc"], repetitions=1)
    assert set(result.mean_seconds) == {"DC", "LSC", "GC"}
    assert all(t > 0 for t in result.mean_seconds.values())
    assert all(len(runs) == 1 for runs in result.runs_seconds.values())
    assert result.metadata["node_count"] == 12


def test_benchmark_rejects_zero_reps():
    with pytest.raises(ValueError):
        benchmark_runtime(cycle_graph(4), ["dc"], repetitions=0)


# ---------------------------------------------------------------------------
# evaluate_dataset


def test_lsc_rank_values_negate_positions():
    ranking = NodeRanking((2, 0, 1), "LSC")
    assert lsc_rank_values(ranking).tolist() == [-1.0, -2.0, 0.0]


def test_evaluate_vertex_transitive_taus_are_zero():
    g = cycle_graph(8)
    params = SirParams(beta=0.2, gamma=1.0, replications=50, rng_seed=2)
    report = evaluate_dataset(g, params, x_percent=25, dataset="c8")
    for tag in ("DC", "EC", "CC", "BC", "GC"):
        assert report.measures[tag]["tau"] == 0.0


def test_evaluate_star_every_measure_finds_center():
    g = star_graph(4)
    params = SirParams(beta=0.1, gamma=1.0, replications=400, rng_seed=4)
    report = evaluate_dataset(g, params, x_percent=20, dataset="star")
    for tag, row in report.measures.items():
        assert row["top_x_k"] == 1
        assert row["top_x_overlap"] == 1, tag


def test_evaluate_is_deterministic_and_thread_invariant():
    g = random_graph(10, 0.35, random.Random(11))
    params = SirParams(beta=0.15, gamma=1.0, replications=60, rng_seed=21)
    a = evaluate_dataset(g, params, x_percent=20, dataset="g", threads=1)
    b = evaluate_dataset(g, params, x_percent=20, dataset="g", threads=4)
    assert a.to_json() == b.to_json()


def test_report_serialization_shape():
    g = star_graph(3)
    params = SirParams(beta=0.2, gamma=1.0, replications=30, rng_seed=1)
    report = evaluate_dataset(g, params, x_percent=25, dataset="s")
    payload = json.loads(report.to_json())
    assert set(payload["measures"]) == {"DC", "EC", "CC", "BC", "GC", "LSC"}
    assert payload["beta"] == 0.2
    import io

    buf = io.StringIO()
    report.write_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "dataset,measure,tau,top_x_overlap,top_x_k"
    assert len(lines) == 7
