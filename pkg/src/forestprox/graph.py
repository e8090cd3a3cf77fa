"""Weighted multigraphs and their Kirchhoff matrices.

Vertices are dense integers ``0 .. n-1``.  Parallel edges are kept as
separate records because several algorithms care about multiplicity;
everything matrix-shaped works on the aggregated (summed) weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    NonPositiveWeightError,
    PartitionError,
    SelfLoopError,
    ValidationError,
    VertexRangeError,
)


class Edge(NamedTuple):
    """One edge record.  For digraphs the arc points from ``u`` to ``v``."""

    u: int
    v: int
    weight: float


@dataclass(frozen=True)
class WeightedMultigraph:
    """Immutable multigraph with positive edge weights.

    Attributes
    ----------
    n : int
        Number of vertices.
    edges : tuple of Edge
        Edge records in input order.  Repeated pairs are parallel edges.
    directed : bool
        Whether records are arcs (True) or undirected edges (False).
    labels : tuple of str, optional
        Display names, one per vertex, unique.
    """

    n: int
    edges: tuple[Edge, ...]
    directed: bool = False
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"graph needs at least one vertex, got n={self.n}")
        for pos, e in enumerate(self.edges):
            if not (0 <= e.u < self.n) or not (0 <= e.v < self.n):
                raise VertexRangeError(
                    f"edge {pos}: endpoint outside 0..{self.n - 1}: ({e.u}, {e.v})"
                )
            if e.u == e.v:
                raise SelfLoopError(f"edge {pos}: self-loop at vertex {e.u}")
            if not (e.weight > 0.0) or not np.isfinite(e.weight):
                raise NonPositiveWeightError(
                    f"edge {pos}: weight must be positive and finite, got {e.weight}"
                )
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValidationError(
                    f"got {len(self.labels)} labels for {self.n} vertices"
                )
            if len(set(self.labels)) != self.n:
                raise ValidationError("vertex labels must be unique")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def aggregated_weights(self) -> np.ndarray:
        """Summed weights per ordered pair.

        Undirected graphs give a symmetric matrix; digraphs accumulate
        entry ``[u, v]`` for each arc u -> v.
        """
        eps = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            eps[u, v] += w
            if not self.directed:
                eps[v, u] += w
        return eps

    def pair_multiplicities(self) -> np.ndarray:
        """Number of parallel records per ordered pair."""
        counts = np.zeros((self.n, self.n), dtype=int)
        for u, v, _ in self.edges:
            counts[u, v] += 1
            if not self.directed:
                counts[v, u] += 1
        return counts

    def neighbors(self, v: int) -> list[int]:
        """Vertices adjacent to ``v``, ignoring direction, ascending."""
        seen = set()
        for u, w, _ in self.edges:
            if u == v:
                seen.add(w)
            elif w == v:
                seen.add(u)
        return sorted(seen)

    def with_increment(self, u: int, v: int, delta: float) -> "WeightedMultigraph":
        """New graph with weight ``delta`` added between ``u`` and ``v``.

        Appending a parallel record and increasing an existing weight give
        the same aggregated weights, so one mechanism covers both.
        """
        return WeightedMultigraph(
            self.n, self.edges + (Edge(u, v, delta),), self.directed, self.labels
        )

    def with_scaled_weights(self, factor: float) -> "WeightedMultigraph":
        scaled = tuple(Edge(u, v, w * factor) for u, v, w in self.edges)
        return WeightedMultigraph(self.n, scaled, self.directed, self.labels)

    def as_doubled_digraph(self) -> "WeightedMultigraph":
        """Replace each undirected edge by a pair of opposite arcs."""
        if self.directed:
            raise ValidationError("graph is already directed")
        arcs: list[Edge] = []
        for u, v, w in self.edges:
            arcs.append(Edge(u, v, w))
            arcs.append(Edge(v, u, w))
        return WeightedMultigraph(self.n, tuple(arcs), True, self.labels)


def build_graph(
    n: int,
    records: Iterable[tuple[int, int, float]],
    directed: bool = False,
    labels: Sequence[str] | None = None,
) -> WeightedMultigraph:
    """Construct a validated :class:`WeightedMultigraph` from raw triples."""
    edges = tuple(Edge(int(u), int(v), float(w)) for u, v, w in records)
    lab = tuple(labels) if labels is not None else None
    return WeightedMultigraph(n, edges, directed, lab)


@dataclass(frozen=True)
class KirchhoffMatrix:
    """Dense Kirchhoff matrix of a graph.

    Built only by :func:`kirchhoff`, which guarantees the invariants
    (row sums zero, nonpositive off-diagonal entries, exact symmetry in
    the undirected case).  The dataclass itself does not re-check them.
    """

    n: int
    matrix: np.ndarray
    directed: bool


def kirchhoff(g: WeightedMultigraph) -> KirchhoffMatrix:
    """Kirchhoff matrix with aggregated conductances.

    Undirected: off-diagonal entry ``[i, j]`` is minus the total weight of
    edges between i and j, and each diagonal entry makes its row sum to
    zero.  Directed: entry ``[i, j]`` aggregates arcs from j to i, so the
    diagonal holds the total weight converging to each vertex and rows
    still sum to zero.
    """
    eps = g.aggregated_weights()
    if g.directed:
        # contiguous copy so the row sums below reduce in the same order
        # as the undirected branch; a doubled digraph then reproduces the
        # undirected matrix bit for bit
        off = np.ascontiguousarray(eps.T)
    else:
        off = eps
    lap = -off + 0.0  # "+ 0.0" turns -0.0 entries into plain zeros
    # no self-loops, so the diagonal of `off` is zero and the row sums of
    # `off` are exactly the conductances entering each vertex
    np.fill_diagonal(lap, off.sum(axis=1))
    return KirchhoffMatrix(g.n, lap, g.directed)


def components(g: WeightedMultigraph) -> list[list[int]]:
    """Connected components ignoring direction.

    Blocks are sorted internally and ordered by their smallest vertex, so
    the partition is deterministic.
    """
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * g.n
    blocks: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        block = [start]
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    queue.append(y)
        blocks.append(sorted(block))
    return blocks


def _reachable(g: WeightedMultigraph, start: int, skip: int | None = None) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y != skip and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def separates(g: WeightedMultigraph, k: int, i: int, t: int) -> bool:
    """Does every path between ``i`` and ``t`` pass through ``k``?

    Paths ignore direction.  Vacuously true when i and t are already in
    different components, and trivially true when k is one of the
    endpoints (every path contains its endpoints).
    """
    for v in (k, i, t):
        if not (0 <= v < g.n):
            raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")
    if i == t:
        raise ValidationError("separation query needs distinct i and t")
    if t not in _reachable(g, i):
        return True
    if k == i or k == t:
        return True
    return t not in _reachable(g, i, skip=k)


def is_macrovertex(g: WeightedMultigraph, group: Iterable[int], atol: float = 0.0) -> bool:
    """Whether the vertices of ``group`` connect identically to the outside.

    Checks, on the aggregated Kirchhoff matrix, that entry ``[i, k]`` is
    the same for every i in the group and each outside k.  A group equal
    to the whole vertex set passes vacuously.
    """
    members = sorted(set(int(v) for v in group))
    if not members:
        raise PartitionError("macrovertex group must be non-empty")
    for v in members:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")
    lap = kirchhoff(g).matrix
    outside = [k for k in range(g.n) if k not in set(members)]
    for k in outside:
        column = lap[members, k]
        if column.max() - column.min() > atol:
            return False
    return True
