"""Rank-one updating of accessibility under edge-weight increments.

Raising the weight between two vertices u and v by delta changes the
inverse by a rank-one matrix that is known in closed form:

    new_q = q + h * outer(c, -c),   c = q[:, u] - q[:, v],
    h = 1 / (d_uv + 1 / (alpha * delta)),

where d_uv is the forest distance between the endpoints.  The same
formula covers adding a brand-new edge.  Forest distances never grow
under an increment, which is asserted downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .accessibility import (
    AccessibilityResult,
    DistanceMatrix,
    forest_accessibility,
    forest_distance,
)
from .errors import IncrementError, OrientationError, VertexRangeError
from .graph import WeightedMultigraph, kirchhoff

DEFAULT_REFRESH_INTERVAL = 32


@dataclass(frozen=True)
class EdgeIncrement:
    """A positive weight increase between two distinct vertices."""

    u: int
    v: int
    delta: float

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise IncrementError(f"increment endpoints must differ, got {self.u}")
        if not (self.delta > 0.0) or not np.isfinite(self.delta):
            raise IncrementError(
                f"increment must be positive and finite, got {self.delta}"
            )


@dataclass(frozen=True)
class IncrementReport:
    """Everything needed to audit one rank-one update.

    ``column_diff`` is q[:, u] - q[:, v]; ``row_diff`` is its negation
    (the matrix is symmetric).  ``delta_matrix`` is the full change and
    ``signs`` classifies each entry as -1, 0, or +1 with entries within
    ``zero_tol`` of zero counted as 0.
    """

    increment: EdgeIncrement
    alpha: float
    gain: float
    endpoint_distance: float
    column_diff: np.ndarray
    row_diff: np.ndarray
    delta_matrix: np.ndarray
    signs: np.ndarray


def apply_increment(
    acc: AccessibilityResult,
    dist: DistanceMatrix,
    inc: EdgeIncrement,
    zero_tol: float = 1e-12,
) -> tuple[AccessibilityResult, DistanceMatrix, IncrementReport]:
    """Apply one edge increment by a rank-one correction.

    Takes and returns matched (accessibility, distance) pairs, so chains
    of what-if updates never re-factorize.  The determinant is updated by
    the matrix determinant lemma.  Undirected only.
    """
    if acc.directed:
        raise OrientationError("rank-one updates require an undirected result")
    if not (0 <= inc.u < acc.n) or not (0 <= inc.v < acc.n):
        raise VertexRangeError(
            f"increment endpoints ({inc.u}, {inc.v}) outside 0..{acc.n - 1}"
        )
    q = acc.matrix
    effective = acc.alpha * inc.delta
    endpoint_distance = float(dist.distances[inc.u, inc.v])
    gain = 1.0 / (endpoint_distance + 1.0 / effective)
    column_diff = q[:, inc.u] - q[:, inc.v]
    # "+ 0.0" keeps zero products from printing as -0.0 downstream
    delta_matrix = -gain * np.outer(column_diff, column_diff) + 0.0
    new_q = q + delta_matrix
    new_det = acc.total_forest_weight * (1.0 + effective * endpoint_distance)
    new_acc = AccessibilityResult(
        acc.n, acc.alpha, new_q, new_det, False, provenance="rank-one-update"
    )
    new_dist = forest_distance(new_acc)
    signs = np.where(
        np.abs(delta_matrix) <= zero_tol, 0, np.sign(delta_matrix)
    ).astype(int)
    report = IncrementReport(
        increment=inc,
        alpha=acc.alpha,
        gain=gain,
        endpoint_distance=endpoint_distance,
        column_diff=column_diff,
        row_diff=-column_diff,
        delta_matrix=delta_matrix,
        signs=signs,
    )
    return new_acc, new_dist, report


def rank_one_certificate(report: IncrementReport, tol: float = 1e-10) -> bool:
    """Confirm that the reported change really is gain * outer(c, -c)."""
    expected = report.gain * np.outer(report.column_diff, report.row_diff)
    if expected.shape != report.delta_matrix.shape:
        return False
    return bool(np.abs(report.delta_matrix - expected).max() <= tol)


class UpdateChain:
    """Sequential what-if increments with periodic full refreshes.

    Each step goes through :func:`apply_increment`; after every
    ``refresh_interval`` steps the accessibility matrix is recomputed
    from the accumulated graph to stop floating-point drift.  Set the
    interval to 0 to disable refreshing.
    """

    def __init__(
        self,
        graph: WeightedMultigraph,
        alpha: float = 1.0,
        refresh_interval: int = DEFAULT_REFRESH_INTERVAL,
    ):
        if graph.directed:
            raise OrientationError("update chains require an undirected graph")
        if refresh_interval < 0:
            raise IncrementError("refresh interval must be >= 0")
        self.graph = graph
        self.alpha = alpha
        self.refresh_interval = refresh_interval
        self.accessibility = forest_accessibility(kirchhoff(graph), alpha)
        self.distances = forest_distance(self.accessibility)
        self.steps = 0
        self.refreshes = 0

    def apply(self, inc: EdgeIncrement) -> IncrementReport:
        new_acc, new_dist, report = apply_increment(
            self.accessibility, self.distances, inc
        )
        self.graph = self.graph.with_increment(inc.u, inc.v, inc.delta)
        self.steps += 1
        if self.refresh_interval and self.steps % self.refresh_interval == 0:
            new_acc = forest_accessibility(kirchhoff(self.graph), self.alpha)
            new_dist = forest_distance(new_acc)
            self.refreshes += 1
        self.accessibility = new_acc
        self.distances = new_dist
        return report
