"""The five per-node centrality measures: degree (DC), eigenvector (EC),
closeness (CC), betweenness (BC), and gravity (GC).

All functions are pure with respect to the immutable Graph and return a
CentralityVector whose ``params`` record the exact settings used, so results
are reproducible from the output alone.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, UNREACHABLE, bfs_distances, k_shell

MEASURES = ("DC", "EC", "CC", "BC", "GC")

CC_COMPONENT_SCALED = "component_scaled"
CC_PAPER_LITERAL = "paper_literal"


class PowerIterationError(RuntimeError):
    """Eigenvector iteration did not converge; carries the last iterate so a
    caller may inspect or accept it."""

    def __init__(self, message: str, scores: np.ndarray, iterations: int, delta: float):
        super().__init__(message)
        self.scores = scores
        self.iterations = iterations
        self.delta = delta


@dataclass(frozen=True)
class CentralityVector:
    """Scores for one measure: scores[i] is node i's value."""

    measure: str
    scores: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")


def degree_centrality(g: Graph) -> CentralityVector:
    """DC(i) = degree(i) / (n - 1)."""
    if g.node_count < 2:
        raise ValueError("degree centrality requires at least 2 nodes")
    scores = g.degrees().astype(np.float64) / (g.node_count - 1)
    return CentralityVector("DC", scores, {})


def eigenvector_centrality(
    g: Graph, tol: float = 1e-8, max_iter: int = 1000
) -> CentralityVector:
    """Dominant-eigenvector scores by power iteration.

    Starts from the uniform positive vector and renormalizes to unit
    Euclidean norm each step. Iteration multiplies by A + I rather than A
    alone: the shift leaves eigenvectors unchanged but breaks the +/-lambda
    oscillation that plain adjacency multiplication suffers on bipartite
    graphs. Converged when the max per-entry change drops below ``tol`` and
    the eigen-residual ||A x - lambda x||_inf is below 10*tol; lambda is the
    Rayleigh quotient of A at the final iterate and is stored in params.

    On a disconnected graph the limit concentrates on the component(s) of
    largest spectral radius; near-zero entries elsewhere are valid scores.
    """
    n = g.node_count
    if g.edge_count == 0:
        raise ValueError("eigenvector centrality is undefined on an edgeless graph")
    rows = np.repeat(np.arange(n), np.diff(g.indptr))
    nbr = g.indices

    def matvec(vec: np.ndarray) -> np.ndarray:
        return np.bincount(rows, weights=vec[nbr], minlength=n)

    x = np.full(n, 1.0 / math.sqrt(n))
    delta = math.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        ax = matvec(x)
        y = ax + x
        y /= np.linalg.norm(y)
        delta = float(np.max(np.abs(y - x)))
        x = y
        if delta < tol:
            ax = matvec(x)
            lam = float(x @ ax)
            if float(np.max(np.abs(ax - lam * x))) < 10.0 * tol:
                break
    else:
        raise PowerIterationError(
            f"no convergence within {max_iter} iterations (last delta {delta:.3e})",
            scores=x,
            iterations=max_iter,
            delta=delta,
        )
    lam = float(x @ matvec(x))
    params = {
        "tol": tol,
        "max_iter": max_iter,
        "iterations": iterations,
        "eigenvalue": lam,
        "shift": 1.0,
        "start": "uniform",
    }
    return CentralityVector("EC", x, params)


def closeness_centrality(
    g: Graph, convention: str = CC_COMPONENT_SCALED
) -> CentralityVector:
    """Closeness from exact BFS distances.

    component_scaled: ((r-1)/S) * ((r-1)/(n-1)) where S is the sum of
    distances to the r-1 other reachable nodes -- well defined on
    disconnected graphs and bounded by 1. paper_literal: n / S over reachable
    nodes only. Isolated nodes score 0 under both.
    """
    if convention not in (CC_COMPONENT_SCALED, CC_PAPER_LITERAL):
        raise ValueError(f"unknown closeness convention {convention!r}")
    n = g.node_count
    if n < 2:
        raise ValueError("closeness centrality requires at least 2 nodes")
    scores = np.zeros(n)
    for i in range(n):
        dist = bfs_distances(g, i)
        reached = dist > 0
        total = int(dist[reached].sum())
        if total == 0:
            continue
        if convention == CC_PAPER_LITERAL:
            scores[i] = n / total
        else:
            r = int(reached.sum()) + 1
            scores[i] = ((r - 1) / total) * ((r - 1) / (n - 1))
    return CentralityVector("CC", scores, {"convention": convention})


def betweenness_centrality(g: Graph, normalized: bool = True) -> CentralityVector:
    """Exact shortest-path betweenness (single-source dependency accumulation).

    Shortest-path multiplicities give fractional credit; endpoints are
    excluded. Each unordered pair is counted once. Normalization divides by
    (n-1)(n-2)/2.
    """
    n = g.node_count
    if normalized and n < 3:
        raise ValueError("normalized betweenness requires at least 3 nodes")
    adj = [g.neighbors(v).tolist() for v in range(n)]
    bc = np.zeros(n)
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    bc /= 2.0  # undirected: every pair was accumulated from both endpoints
    if normalized:
        bc /= (n - 1) * (n - 2) / 2.0
    return CentralityVector("BC", bc, {"normalized": normalized})


def gravity_centrality(
    g: Graph, radius: int = 3, exponent: int = 2
) -> CentralityVector:
    """Gravity-style influence: sum of ks_i * ks_j / d(i,j)^exponent over every
    node j within ``radius`` hops of i, with ks the k-shell index.

    Follows the measure's reference implementations: shortest-path distances
    are computed per source, then each in-radius node contributes its own
    mass term individually.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    n = g.node_count
    shells = k_shell(g)
    shell_vals: list[int] = shells.tolist()
    scores = np.zeros(n)
    for i in range(n):
        dist = bfs_distances(g, i)
        within = (dist != UNREACHABLE) & (dist >= 1) & (dist <= radius)
        nodes = np.nonzero(within)[0].tolist()
        dists = dist[within].tolist()
        acc = 0.0
        ks_i = shell_vals[i]
        for j, d in zip(nodes, dists):
            acc += (ks_i * shell_vals[j]) / (d**exponent)
        scores[i] = acc
    return CentralityVector("GC", scores, {"radius": radius, "exponent": exponent})


def compute_centrality(
    g: Graph,
    measure: str,
    *,
    cc_convention: str = CC_COMPONENT_SCALED,
    ec_tol: float = 1e-8,
    ec_max_iter: int = 1000,
    bc_normalized: bool = True,
    gc_radius: int = 3,
    gc_exponent: int = 2,
) -> CentralityVector:
    """Dispatch a measure tag (case-insensitive) to its implementation."""
    tag = measure.upper()
    if tag == "DC":
        return degree_centrality(g)
    if tag == "EC":
        return eigenvector_centrality(g, tol=ec_tol, max_iter=ec_max_iter)
    if tag == "CC":
        return closeness_centrality(g, convention=cc_convention)
    if tag == "BC":
        return betweenness_centrality(g, normalized=bc_normalized)
    if tag == "GC":
        return gravity_centrality(g, radius=gc_radius, exponent=gc_exponent)
    raise ValueError(f"unknown measure {measure!r}")


def write_centrality_csv(vectors: list[CentralityVector], stream) -> None:
    """CSV with header node,measure,score; scores at 12 significant digits."""
    stream.write("node,measure,score\n")
    for vec in vectors:
        for node, score in enumerate(vec.scores):
            stream.write(f"{node},{vec.measure},{score:.12g}\n")
