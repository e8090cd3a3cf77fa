"""Power-series view of accessibility and its combinatorial meaning.

With M = -alpha * L, the partial sums I + M + M^2 + ... approach the
accessibility matrix whenever the edge weights are small enough; a
sufficient bound is 1 / (2 * a_max * (n - 1)) per weight, where a_max is
the largest number of parallel records on any pair.  Each power of M
also counts routes with drains: walks in which an edge may be spent
standing still at a vertex, with the sign of the term given by the
parity of those drains.  The enumerator below generates the walks
explicitly, so it double-checks the matrix powers without using them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeGuardError, VertexRangeError
from .graph import WeightedMultigraph, kirchhoff

MAX_RWD_VERTICES = 5
MAX_RWD_LENGTH = 6


@dataclass(frozen=True)
class WeightBoundReport:
    """Convergence weight bound and whether the graph satisfies it.

    ``bound`` is infinite when there are fewer than two vertices or no
    edges at all, in which case the series trivially converges and
    ``within_bound`` is vacuously True.  The check compares aggregated
    pair weights against the bound, strictly.
    """

    bound: float
    max_pair_multiplicity: int
    max_aggregated_weight: float
    within_bound: bool


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of the power series plus diagnostics.

    ``term_norms`` holds the max-row-sum norm of each term, starting at
    1.0 for the identity; a tail that refuses to shrink is the caller's
    signal that the weights sit outside the convergence region.  The
    computation itself never refuses to run.
    """

    partial_sum: np.ndarray
    term_norms: tuple[float, ...]
    max_len: int
    alpha: float
    bound: float
    within_bound: bool


@dataclass(frozen=True)
class RouteDrainWeight:
    """Even- and odd-parity route weights for one (source, target, length)."""

    source: int
    target: int
    length: int
    even_weight: float
    odd_weight: float

    @property
    def signed_weight(self) -> float:
        return self.even_weight - self.odd_weight


def weight_bound(g: WeightedMultigraph, alpha: float = 1.0) -> WeightBoundReport:
    """Sufficient per-pair weight bound for series convergence."""
    counts = g.pair_multiplicities()
    a_max = int(counts.max()) if g.n > 1 else 0
    eps = g.aggregated_weights()
    max_weight = float(eps.max()) if g.edge_count else 0.0
    if g.n < 2 or a_max == 0:
        return WeightBoundReport(np.inf, a_max, max_weight, True)
    bound = 1.0 / (2.0 * a_max * (g.n - 1) * alpha)
    return WeightBoundReport(bound, a_max, max_weight, max_weight < bound)


def series_partial_sum(
    g: WeightedMultigraph, max_len: int = 60, alpha: float = 1.0
) -> SeriesResult:
    """Sum the first ``max_len`` + 1 powers of -alpha * L.

    Always computes; the result carries the weight bound and per-term
    norms so callers can judge convergence for themselves.
    """
    if max_len < 0:
        raise VertexRangeError(f"series length must be >= 0, got {max_len}")
    step = -alpha * kirchhoff(g).matrix
    total = np.eye(g.n)
    term = np.eye(g.n)
    norms = [1.0]
    for _ in range(max_len):
        term = term @ step
        total = total + term
        norms.append(float(np.abs(term).sum(axis=1).max()))
    report = weight_bound(g, alpha)
    return SeriesResult(
        partial_sum=total,
        term_norms=tuple(norms),
        max_len=max_len,
        alpha=alpha,
        bound=report.bound,
        within_bound=report.within_bound,
    )


def _records_at(g: WeightedMultigraph, x: int) -> list[tuple[int, float]]:
    """Records usable from vertex x, as (far endpoint, weight) pairs.

    Undirected: edges incident to x.  Directed: arcs converging to x,
    matching the Kirchhoff convention, so walking x -> y consumes an arc
    y -> x and a drain at x consumes any arc into x.
    """
    out = []
    for u, v, w in g.edges:
        if g.directed:
            if v == x:
                out.append((u, w))
        else:
            if u == x:
                out.append((v, w))
            elif v == x:
                out.append((u, w))
    return out


def enumerate_routes_with_drains(
    g: WeightedMultigraph,
    source: int,
    target: int,
    length: int,
    max_vertices: int = MAX_RWD_VERTICES,
    max_length: int = MAX_RWD_LENGTH,
) -> RouteDrainWeight:
    """Exhaustive route-with-drains weights between two vertices.

    A route consumes one edge record per step.  A step either moves to
    the far end of the record or stays put (a drain), and a record may
    be consumed many times, its weight multiplying in once per use.  The
    result splits total route weight by drain parity.  Zero-length
    routes exist exactly when source == target, with weight one and no
    drains.
    """
    if g.n > max_vertices or length > max_length:
        raise SizeGuardError(
            f"route enumeration limited to {max_vertices} vertices and "
            f"length {max_length}, got n={g.n}, length={length}"
        )
    if length < 0:
        raise VertexRangeError(f"length must be >= 0, got {length}")
    for v in (source, target):
        if not (0 <= v < g.n):
            raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")
    incident = [_records_at(g, x) for x in range(g.n)]
    parity_weight = [0.0, 0.0]

    def extend(x: int, remaining: int, weight: float, parity: int) -> None:
        if remaining == 0:
            if x == target:
                parity_weight[parity] += weight
            return
        for far, w in incident[x]:
            extend(far, remaining - 1, weight * w, parity)
            extend(x, remaining - 1, weight * w, parity ^ 1)

    extend(source, length, 1.0, 0)
    return RouteDrainWeight(
        source, target, length, parity_weight[0], parity_weight[1]
    )
