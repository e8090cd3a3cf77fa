"""Brute-force enumeration of spanning rooted forests.

This module is the independent oracle for the linear-algebra code: it
scans every edge subset, expands root assignments combinatorially, and
builds matrices from forest weights alone.  Nothing here touches a
matrix inverse, so agreement with the solver is meaningful evidence.
Instances are guarded to stay small.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import OrientationError, SizeGuardError
from .graph import WeightedMultigraph, kirchhoff

MAX_ORACLE_VERTICES = 10
MAX_ORACLE_EDGES = 16


@dataclass(frozen=True)
class SpanningForest:
    """A spanning forest together with one root per tree.

    ``edges`` holds indices into the graph's record tuple.  ``partition``
    lists the vertex sets of the trees (singletons included), each sorted,
    blocks ordered by smallest vertex.  ``roots`` is aligned with
    ``partition``.  ``weight`` is the product of member edge weights
    (1.0 for the empty forest).
    """

    edges: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]
    weight: float

    def block_of(self, v: int) -> tuple[int, ...]:
        for block in self.partition:
            if v in block:
                return block
        raise ValueError(f"vertex {v} not covered by partition")

    def root_of(self, v: int) -> int:
        for block, root in zip(self.partition, self.roots):
            if v in block:
                return root
        raise ValueError(f"vertex {v} not covered by partition")

    def same_tree(self, u: int, v: int) -> bool:
        return v in self.block_of(u)


def _check_guards(g: WeightedMultigraph, max_vertices: int, max_edges: int) -> None:
    if g.n > max_vertices or g.edge_count > max_edges:
        raise SizeGuardError(
            f"enumeration limited to {max_vertices} vertices / {max_edges} "
            f"edges, got n={g.n}, m={g.edge_count}"
        )


def _subset_partition(n: int, edges: Sequence, member_indices: Iterable[int]):
    """Components of the chosen edge subset, or None if it has a cycle.

    Union-find; a union of two already-joined vertices is a cycle.
    """
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx in member_indices:
        u, v, _ = edges[idx]
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
    blocks: dict[int, list[int]] = {}
    for v in range(n):
        blocks.setdefault(find(v), []).append(v)
    ordered = sorted((tuple(sorted(b)) for b in blocks.values()), key=lambda b: b[0])
    return ordered


def enumerate_rooted_forests(
    g: WeightedMultigraph,
    max_vertices: int = MAX_ORACLE_VERTICES,
    max_edges: int = MAX_ORACLE_EDGES,
) -> list[SpanningForest]:
    """All spanning rooted forests of an undirected multigraph.

    Every acyclic edge subset is expanded into one forest per choice of
    root in each tree.  The list order is deterministic: subsets ascend
    by bitmask, root choices follow itertools.product order.
    """
    if g.directed:
        raise OrientationError("rooted-forest enumeration expects an undirected graph")
    _check_guards(g, max_vertices, max_edges)
    m = g.edge_count
    out: list[SpanningForest] = []
    for mask in range(1 << m):
        idxs = tuple(i for i in range(m) if mask >> i & 1)
        partition = _subset_partition(g.n, g.edges, idxs)
        if partition is None:
            continue
        weight = math.prod(g.edges[i].weight for i in idxs)
        for roots in itertools.product(*partition):
            out.append(SpanningForest(idxs, tuple(partition), roots, weight))
    return out


def enumerate_diverging_forests(
    g: WeightedMultigraph,
    max_vertices: int = MAX_ORACLE_VERTICES,
    max_edges: int = MAX_ORACLE_EDGES,
) -> list[SpanningForest]:
    """All spanning diverging forests of a digraph.

    A valid arc subset gives every vertex in-degree at most one and is
    acyclic when direction is ignored; each tree is then reachable by
    directed paths from its unique in-degree-zero vertex, which is the
    forced root.  One forest per subset.
    """
    if not g.directed:
        raise OrientationError("diverging-forest enumeration expects a digraph")
    _check_guards(g, max_vertices, max_edges)
    m = g.edge_count
    out: list[SpanningForest] = []
    for mask in range(1 << m):
        idxs = tuple(i for i in range(m) if mask >> i & 1)
        indeg = [0] * g.n
        ok = True
        for i in idxs:
            indeg[g.edges[i].v] += 1
            if indeg[g.edges[i].v] > 1:
                ok = False
                break
        if not ok:
            continue
        partition = _subset_partition(g.n, g.edges, idxs)
        if partition is None:
            continue
        roots = tuple(
            next(v for v in block if indeg[v] == 0) for block in partition
        )
        weight = math.prod(g.edges[i].weight for i in idxs)
        out.append(SpanningForest(idxs, tuple(partition), roots, weight))
    return out


def spanning_forests_of(g: WeightedMultigraph, **guards) -> list[SpanningForest]:
    """Orientation-appropriate forest family."""
    if g.directed:
        return enumerate_diverging_forests(g, **guards)
    return enumerate_rooted_forests(g, **guards)


def weight_of_set(
    forests: Iterable[SpanningForest],
    predicate: Callable[[SpanningForest], bool] | None = None,
) -> float:
    """Total weight of the forests satisfying ``predicate`` (all, if None).

    An empty selection has weight 0.  Accumulation follows the iteration
    order of ``forests`` so repeated runs agree bit for bit.
    """
    total = 0.0
    for f in forests:
        if predicate is None or predicate(f):
            total += f.weight
    return total


def forest_weight_table(
    g: WeightedMultigraph,
    max_vertices: int = MAX_ORACLE_VERTICES,
    max_edges: int = MAX_ORACLE_EDGES,
) -> tuple[np.ndarray, float]:
    """Numerators and denominator of the accessibility ratios.

    Entry ``[i, j]`` of the table is the total weight of forests in which
    the tree containing i is rooted at j.  The scalar is the weight of
    the whole family.  Rows of the table sum to the scalar because the
    root of i's tree takes exactly one value per forest.
    """
    forests = spanning_forests_of(
        g, max_vertices=max_vertices, max_edges=max_edges
    )
    table = np.zeros((g.n, g.n))
    total = 0.0
    for f in forests:
        total += f.weight
        for block, root in zip(f.partition, f.roots):
            for i in block:
                table[i, root] += f.weight
    return table, total


def oracle_accessibility(
    g: WeightedMultigraph,
    max_vertices: int = MAX_ORACLE_VERTICES,
    max_edges: int = MAX_ORACLE_EDGES,
) -> np.ndarray:
    """Accessibility matrix computed purely from forest enumeration."""
    table, total = forest_weight_table(
        g, max_vertices=max_vertices, max_edges=max_edges
    )
    return table / total


def _signed_minor_det(matrix: np.ndarray, i: int, j: int) -> float:
    minor = np.delete(np.delete(matrix, i, axis=0), j, axis=1)
    if minor.shape[0] == 0:
        det = 1.0
    else:
        det = float(np.linalg.det(minor))
    return det if (i + j) % 2 == 0 else -det


def _spanning_tree_weight(g: WeightedMultigraph, root: int | None) -> float:
    """Total weight of spanning trees; diverging from ``root`` if directed."""
    n, m = g.n, g.edge_count
    if n - 1 > m:
        return 0.0
    total = 0.0
    for idxs in itertools.combinations(range(m), n - 1):
        if g.directed:
            indeg = [0] * n
            bad = False
            for i in idxs:
                indeg[g.edges[i].v] += 1
                if indeg[g.edges[i].v] > 1:
                    bad = True
                    break
            if bad or (root is not None and indeg[root] != 0):
                continue
        partition = _subset_partition(n, g.edges, idxs)
        if partition is None or len(partition) != 1:
            continue
        total += math.prod(g.edges[i].weight for i in idxs)
    return total


def tree_cofactor_check(
    g: WeightedMultigraph,
    tol: float = 1e-9,
    max_vertices: int = MAX_ORACLE_VERTICES,
    max_edges: int = MAX_ORACLE_EDGES,
) -> bool:
    """Certify the cofactor identities of the Kirchhoff matrix.

    Undirected: every cofactor equals the total spanning-tree weight.
    Directed: the cofactors along row i all equal the total weight of
    spanning trees diverging from i.  Cofactors are evaluated as signed
    determinants of (n-1) x (n-1) minors, independently of any inverse.
    """
    _check_guards(g, max_vertices, max_edges)
    lap = kirchhoff(g).matrix
    n = g.n

    def close(a: float, b: float) -> bool:
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))

    if not g.directed:
        expected = _spanning_tree_weight(g, None)
        return all(
            close(_signed_minor_det(lap, i, j), expected)
            for i in range(n)
            for j in range(n)
        )
    for i in range(n):
        expected = _spanning_tree_weight(g, i)
        if not all(close(_signed_minor_det(lap, i, j), expected) for j in range(n)):
            return False
    return True
