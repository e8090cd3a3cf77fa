"""Relative forest accessibility via dense linear algebra.

The accessibility matrix is the inverse of I + alpha * L, where L is the
Kirchhoff matrix.  By the matrix-forest theorem its entries are ratios of
spanning-rooted-forest weights, which forces a list of invariants (row
stochasticity, nonnegativity, diagonal dominance, ...).  The solver
checks them after every factorization: a violation means the input or
the arithmetic is corrupted, so it raises rather than returning junk.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import (
    AsymmetryError,
    InvariantError,
    OrientationError,
    PartitionError,
    SingularMatrixError,
    ValidationError,
)
from .graph import KirchhoffMatrix

logger = logging.getLogger(__name__)

# A forest-accessibility system has determinant >= 1; a huge condition
# estimate therefore signals corrupted input, not a hard problem.
MAX_CONDITION = 1e14

DEFAULT_STOCHASTIC_TOL = 1e-9
DEFAULT_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class AccessibilityResult:
    """Accessibility matrix plus the scalars needed downstream.

    ``total_forest_weight`` is det(I + alpha*L): for alpha = 1 it equals
    the total weight of spanning rooted forests, and in general the same
    quantity for the graph with all weights scaled by alpha.
    """

    n: int
    alpha: float
    matrix: np.ndarray
    total_forest_weight: float
    directed: bool
    provenance: str = "lu-solve"

    @property
    def solitariness(self) -> np.ndarray:
        """Diagonal of the matrix: each vertex's self-accessibility."""
        return np.diag(self.matrix).copy()


@dataclass(frozen=True)
class DistanceMatrix:
    """Forest distances d[i, j] = q[i, i] + q[j, j] - 2 q[i, j]."""

    n: int
    distances: np.ndarray


def forest_accessibility(
    kir: KirchhoffMatrix,
    alpha: float = 1.0,
    stochastic_tol: float = DEFAULT_STOCHASTIC_TOL,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> AccessibilityResult:
    """Solve (I + alpha*L) Q = I and validate the result.

    Parameters
    ----------
    kir : KirchhoffMatrix
        Output of :func:`forestprox.graph.kirchhoff`.
    alpha : float
        Positive scale applied to the Kirchhoff matrix.
    stochastic_tol : float
        Tolerance for row sums, entry range, and the symmetry check.
    zero_tol : float
        Threshold below which an entry counts as structurally zero.

    Raises
    ------
    SingularMatrixError
        If the factorization fails or the condition estimate is huge.
    AsymmetryError
        If an undirected system produces an asymmetric matrix.
    InvariantError
        If any other guaranteed property fails numerically.
    """
    if not (alpha > 0.0) or not np.isfinite(alpha):
        raise ValidationError(f"alpha must be positive and finite, got {alpha}")
    n = kir.n
    system = np.eye(n) + alpha * kir.matrix
    try:
        with warnings.catch_warnings():
            # scipy warns on an exactly zero pivot; the zero-diagonal check
            # below turns that case into an exception anyway
            warnings.simplefilter("ignore", la.LinAlgWarning)
            lu, piv = la.lu_factor(system)
    except la.LinAlgError as exc:
        raise SingularMatrixError(f"factorization failed: {exc}") from exc
    diag = np.diag(lu)
    if np.any(diag == 0.0):
        raise SingularMatrixError("system matrix is exactly singular")
    swaps = int(np.sum(piv != np.arange(n)))
    det = float(np.prod(diag)) * (-1.0 if swaps % 2 else 1.0)
    q = la.lu_solve((lu, piv), np.eye(n))

    norm_system = np.abs(system).sum(axis=1).max()
    norm_inverse = np.abs(q).sum(axis=1).max()
    condition = norm_system * norm_inverse
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularMatrixError(
            f"condition estimate {condition:.3e} exceeds {MAX_CONDITION:.0e}"
        )

    if not kir.directed:
        asymmetry = float(np.abs(q - q.T).max())
        if asymmetry > stochastic_tol:
            raise AsymmetryError(
                f"undirected accessibility asymmetric by {asymmetry:.3e}"
            )
        # averaging keeps the matrix bitwise symmetric for downstream use
        q = (q + q.T) / 2.0

    _validate_accessibility(q, det, kir.directed, stochastic_tol)
    return AccessibilityResult(n, alpha, q, det, kir.directed)


def _validate_accessibility(
    q: np.ndarray, det: float, directed: bool, tol: float
) -> None:
    n = q.shape[0]
    if det < 1.0 - tol:
        raise InvariantError(f"determinant {det} fell below 1")
    row_gap = float(np.abs(q.sum(axis=1) - 1.0).max())
    if row_gap > tol:
        raise InvariantError(f"row sums off by {row_gap:.3e}")
    if float(q.min()) < -tol or float(q.max()) > 1.0 + tol:
        raise InvariantError("entries escape [0, 1]")
    off = q - np.diag(np.diag(q))
    dominance_gap = float((np.diag(q) - off.max(axis=1)).min()) if n > 1 else 1.0
    if not directed:
        col_gap = float(np.abs(q.sum(axis=0) - 1.0).max())
        if col_gap > tol:
            raise InvariantError(f"column sums off by {col_gap:.3e}")
        if n > 1 and dominance_gap <= 0.0:
            raise InvariantError(
                f"diagonal dominance violated by {dominance_gap:.3e}"
            )
    elif n > 1 and dominance_gap <= 0.0:
        # only guaranteed for undirected graphs; worth noticing, not fatal
        logger.info("directed accessibility without diagonal dominance "
                    "(gap %.3e)", dominance_gap)


def forest_distance(
    acc: AccessibilityResult,
    tol: float = DEFAULT_STOCHASTIC_TOL,
    validate: bool = True,
) -> DistanceMatrix:
    """Forest distance matrix of an undirected accessibility result.

    Raises :class:`OrientationError` for directed input, where the
    construction below is not a metric.
    """
    if acc.directed:
        raise OrientationError("forest distance is defined for undirected graphs")
    q = acc.matrix
    self_acc = np.diag(q)
    dist = self_acc[:, None] + self_acc[None, :] - q - q.T
    if validate:
        _validate_metric(dist, tol)
    return DistanceMatrix(acc.n, dist)


def _validate_metric(dist: np.ndarray, tol: float) -> None:
    if float(np.abs(np.diag(dist)).max()) > tol:
        raise InvariantError("distance diagonal is not zero")
    if not np.array_equal(dist, dist.T):
        raise InvariantError("distance matrix is not symmetric")
    if float(dist.min()) < -tol:
        raise InvariantError("negative distance entry")
    # d[i,k] <= d[i,j] + d[j,k] for all triples
    slack = dist[:, :, None] + dist[None, :, :] - dist[:, None, :]
    if float(slack.min()) < -tol:
        raise InvariantError(f"triangle inequality violated by {-float(slack.min()):.3e}")


def block_structure(
    acc: AccessibilityResult,
    partition: list[list[int]],
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> bool:
    """Check that accessibility is positive exactly within blocks.

    ``partition`` is expected to be the component partition of the source
    graph.  Returns True when every within-block entry exceeds
    ``zero_tol`` and every cross-block entry stays below it.
    """
    if acc.directed:
        raise OrientationError("block structure check expects an undirected result")
    n = acc.n
    block_id = np.full(n, -1, dtype=int)
    count = 0
    for b, block in enumerate(partition):
        for v in block:
            if not (0 <= v < n) or block_id[v] != -1:
                raise PartitionError("partition must cover each vertex exactly once")
            block_id[v] = b
            count += 1
    if count != n:
        raise PartitionError(f"partition covers {count} of {n} vertices")
    same = block_id[:, None] == block_id[None, :]
    return bool(np.all((acc.matrix > zero_tol) == same))
