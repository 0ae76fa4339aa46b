"""Graph representation, edge-list ingestion, synthetic generation, and
structural primitives (BFS distances, connected components, k-shell).

Graphs are undirected, unweighted, and simple, with node ids 0..n-1.
Adjacency is stored in CSR form (``indptr``/``indices``) with each node's
neighbor list sorted ascending; a Graph is immutable after construction and
safe to share across threads.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

log = logging.getLogger(__name__)

# Distance marker for nodes not reachable from the BFS source. Deliberately
# not a large finite number so downstream sums cannot silently absorb it.
UNREACHABLE = -1

COMMENT_PREFIXES = ("#", "%")


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph with contiguous 0-based node ids.

    Attributes:
        node_count: number of nodes n.
        indptr: int64 array of length n+1, CSR row offsets.
        indices: int32 array of neighbor ids, sorted within each node.
        edge_count: number of undirected edges (half the adjacency entries).
        labels: original node labels in id order when the graph was loaded
            with relabeling, else None.
    """

    node_count: int
    indptr: np.ndarray
    indices: np.ndarray
    edge_count: int
    labels: tuple | None = None

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (a read-only view, do not mutate)."""
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def adjacency_lists(self) -> list[np.ndarray]:
        """Per-node neighbor arrays (views into the CSR storage)."""
        return [self.neighbors(v) for v in range(self.node_count)]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v, sorted."""
        for u in range(self.node_count):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edge_count == other.edge_count
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


@dataclass(frozen=True)
class DatasetStats:
    node_count: int
    edge_count: int
    mean_degree: float
    max_degree: int
    density: float


def from_edges(node_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from (u, v) pairs; self-loops and duplicates are dropped."""
    if node_count < 0:
        raise ValueError("node_count must be non-negative")
    canon = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            continue
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise ValueError(f"edge ({u}, {v}) out of range for n={node_count}")
        canon.add((u, v) if u < v else (v, u))
    deg = np.zeros(node_count, dtype=np.int64)
    for u, v in canon:
        deg[u] += 1
        deg[v] += 1
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int32)
    cursor = indptr[:-1].copy()
    for u, v in sorted(canon):
        indices[cursor[u]] = v
        cursor[u] += 1
        indices[cursor[v]] = u
        cursor[v] += 1
    # rows are filled in sorted edge order, so each neighbor run is sorted for
    # the first endpoint but not necessarily for the second; sort every run
    for i in range(node_count):
        indices[indptr[i] : indptr[i + 1]].sort()
    return Graph(node_count, indptr, indices, len(canon))


def load_edge_list(source: str | IO[str], relabel: bool = False) -> Graph:
    """Parse an edge-list text into a Graph.

    One edge per line as two whitespace-separated tokens; lines starting with
    '#' or '%' and blank lines are ignored. Duplicate edges and self-loops are
    dropped (a summary warning is logged). Without ``relabel``, tokens must be
    non-negative integers and the graph spans 0..max_id. With ``relabel``,
    arbitrary labels are mapped to 0..n-1 in sorted order (numeric when every
    label is an integer, lexicographic otherwise) and the original labels are
    retained on the returned Graph.
    """
    text = source if isinstance(source, str) else source.read()
    raw_edges: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected 2 node tokens, got {len(tokens)}: {stripped!r}", lineno
            )
        raw_edges.append((tokens[0], tokens[1]))
    if not raw_edges:
        raise ValueError("empty edge list: no edges found in input")

    labels: tuple | None = None
    if relabel:
        seen = {tok for edge in raw_edges for tok in edge}
        # numeric order only when every token round-trips through int, so
        # padded variants like "01" vs "1" stay distinct string labels
        if all(tok.lstrip("-").isdigit() and str(int(tok)) == tok for tok in seen):
            ordered = sorted(seen, key=int)
            label_values: tuple = tuple(int(t) for t in ordered)
        else:
            ordered = sorted(seen)
            label_values = tuple(ordered)
        mapping = {tok: i for i, tok in enumerate(ordered)}
        edges = [(mapping[a], mapping[b]) for a, b in raw_edges]
        labels = label_values
        n = len(ordered)
    else:
        edges = []
        for a, b in raw_edges:
            try:
                edges.append((int(a), int(b)))
            except ValueError:
                raise ValueError(
                    f"non-integer node tokens ({a!r}, {b!r}); load with relabel=True"
                ) from None
        if any(u < 0 or v < 0 for u, v in edges):
            raise ValueError("negative node ids are not allowed without relabel")
        n = max(max(u, v) for u, v in edges) + 1

    self_loops = sum(1 for u, v in edges if u == v)
    canon = {(min(u, v), max(u, v)) for u, v in edges if u != v}
    duplicates = len(edges) - self_loops - len(canon)
    if self_loops or duplicates:
        log.warning(
            "dropped %d self-loop(s) and %d duplicate edge(s) while loading",
            self_loops,
            duplicates,
        )
    g = from_edges(n, canon)
    if labels is not None:
        g = dataclasses.replace(g, labels=labels)
    return g


def save_edge_list(g: Graph, stream: IO[str]) -> None:
    """Write one 'u v' line per edge, u < v, sorted; round-trips via load."""
    for u, v in g.edges():
        stream.write(f"{u} {v}\n")


def generate_barabasi_albert(n: int, m: int, rng_seed: int) -> Graph:
    """Preferential-attachment graph: m isolated seed nodes, then each new
    node attaches to m distinct existing nodes with probability proportional
    to current degree (the first new node's targets are the initial nodes).

    Deterministic for a fixed rng_seed; always has m*(n-m) edges.
    """
    if m < 1 or m >= n:
        raise ValueError(f"require 1 <= m < n, got m={m}, n={n}")
    rng = np.random.default_rng(rng_seed)
    edges: list[tuple[int, int]] = []
    # one entry per edge endpoint: sampling uniformly from this list is
    # sampling nodes proportionally to degree
    repeated: list[int] = []
    for new in range(m, n):
        if not repeated:
            targets = list(range(m))
        else:
            picked: list[int] = []
            seen: set[int] = set()
            while len(picked) < m:
                candidate = repeated[int(rng.integers(0, len(repeated)))]
                if candidate not in seen:
                    seen.add(candidate)
                    picked.append(candidate)
            targets = picked
        for t in targets:
            edges.append((t, new))
            repeated.append(t)
        repeated.extend([new] * m)
    return from_edges(n, edges)


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Exact unweighted shortest-path distances from source (int32 array);
    unreachable nodes are marked UNREACHABLE (-1).
    """
    if not 0 <= source < g.node_count:
        raise ValueError(f"source {source} out of range for n={g.node_count}")
    indptr, indices = g.indptr, g.indices
    dist = np.full(g.node_count, UNREACHABLE, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int32)
    d = 0
    while frontier.size:
        segments = [indices[indptr[v] : indptr[v + 1]] for v in frontier]
        nbrs = segments[0] if len(segments) == 1 else np.concatenate(segments)
        nbrs = nbrs[dist[nbrs] == UNREACHABLE]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs)
        d += 1
        dist[frontier] = d
    return dist


def k_shell(g: Graph) -> np.ndarray:
    """k-core decomposition by iterative peeling.

    For k = 0, 1, 2, ... remove (cascading) every node whose remaining degree
    is <= k; a node's shell index is the k at which it was removed.
    """
    n = g.node_count
    indptr, indices = g.indptr, g.indices
    deg = np.diff(indptr).astype(np.int64)
    shell = np.zeros(n, dtype=np.int32)
    alive = np.ones(n, dtype=bool)
    remaining = n
    k = 0
    while remaining:
        while True:
            to_remove = np.nonzero(alive & (deg <= k))[0]
            if to_remove.size == 0:
                break
            for v in to_remove:
                alive[v] = False
                shell[v] = k
                remaining -= 1
                nbrs = indices[indptr[v] : indptr[v + 1]]
                live_nbrs = nbrs[alive[nbrs]]
                deg[live_nbrs] -= 1
        k += 1
    return shell


def connected_components(g: Graph) -> tuple[np.ndarray, list[int]]:
    """Label nodes by connected component.

    Returns (labels, sizes): labels are dense from 0 in order of each
    component's smallest node id; sizes[c] is the node count of component c.
    """
    n = g.node_count
    labels = np.full(n, -1, dtype=np.int64)
    sizes: list[int] = []
    indptr, indices = g.indptr, g.indices
    for start in range(n):
        if labels[start] != -1:
            continue
        comp = len(sizes)
        labels[start] = comp
        frontier = np.array([start], dtype=np.int32)
        count = 1
        while frontier.size:
            segments = [indices[indptr[v] : indptr[v + 1]] for v in frontier]
            nbrs = segments[0] if len(segments) == 1 else np.concatenate(segments)
            nbrs = nbrs[labels[nbrs] == -1]
            if nbrs.size == 0:
                break
            frontier = np.unique(nbrs)
            labels[frontier] = comp
            count += frontier.size
        sizes.append(count)
    return labels, sizes


def dataset_stats(g: Graph) -> DatasetStats:
    """Node/edge counts, mean and max degree, and density of a graph."""
    n, m = g.node_count, g.edge_count
    if n < 2:
        raise ValueError("dataset_stats requires at least 2 nodes")
    degrees = g.degrees()
    return DatasetStats(
        node_count=n,
        edge_count=m,
        mean_degree=2.0 * m / n,
        max_degree=int(degrees.max()) if n else 0,
        density=2.0 * m / (n * (n - 1)),
    )
