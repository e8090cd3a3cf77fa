"""Sociometric indices, classical and accessibility-based.

The classical family reads a choice digraph directly: status counts the
choices a member receives, effusiveness the choices made, reciprocity
the mutual pairs, each normalized by n - 1.  The accessibility-based
family reads the diagonal of the accessibility matrix: solitariness is
the self-accessibility of a member, dissociation its group mean, and
provinciality compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .accessibility import AccessibilityResult
from .errors import OrientationError
from .graph import WeightedMultigraph


@dataclass(frozen=True)
class DerivativeIndices:
    """Indices computed from an accessibility matrix.

    ``provinciality_ratio`` is solitariness / dissociation per vertex and
    ``provinciality_diff`` the difference; the differences sum to zero.
    ``heterogeneity`` is the population variance of solitariness.
    """

    solitariness: np.ndarray
    dissociation: float
    heterogeneity: float
    provinciality_ratio: np.ndarray
    provinciality_diff: np.ndarray
    alpha: float
    directed_source: bool


@dataclass(frozen=True)
class ClassicalIndices:
    """Choice-digraph indices with their normalization recorded.

    Parallel arcs collapse to presence unless ``weighted`` was requested,
    in which case status and effusiveness sum arc weights.  Reciprocity
    always counts distinct mutual partners.  All per-vertex values are
    divided by n - 1; ``reciprocity_denominator`` records that the same
    choice was made for reciprocity, where a mutual-pair count over
    possible pairs would be the alternative.
    """

    status: np.ndarray
    effusiveness: np.ndarray
    reciprocity: np.ndarray
    density: float
    cohesion: float
    status_heterogeneity: float
    weighted: bool
    normalization: str = "n-1"
    reciprocity_denominator: str = "n-1"


@dataclass(frozen=True)
class IndexReport:
    """Bundle of whichever index families were computed."""

    derivative: DerivativeIndices | None = None
    classical: ClassicalIndices | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def derivative_indices(acc: AccessibilityResult) -> DerivativeIndices:
    """Accessibility-based indices of one result.

    Directed sources are permitted; the flag is carried on the output
    because the interpretation of the diagonal is cleanest for
    undirected groups.
    """
    solitariness = acc.solitariness
    dissociation = float(solitariness.mean())
    heterogeneity = float(solitariness.var())
    return DerivativeIndices(
        solitariness=solitariness,
        dissociation=dissociation,
        heterogeneity=heterogeneity,
        provinciality_ratio=solitariness / dissociation,
        provinciality_diff=solitariness - dissociation,
        alpha=acc.alpha,
        directed_source=acc.directed,
    )


def classical_indices(
    g: WeightedMultigraph, weighted: bool = False
) -> ClassicalIndices:
    """Classical sociometric indices of a choice digraph."""
    if not g.directed:
        raise OrientationError("classical indices need a directed choice graph")
    n = g.n
    eps = g.aggregated_weights()
    presence = eps > 0.0
    if n == 1:
        # no possible choices; every index is zero by convention
        zeros = np.zeros(1)
        return ClassicalIndices(zeros, zeros.copy(), zeros.copy(), 0.0, 0.0, 0.0, weighted)
    scale = 1.0 / (n - 1)
    if weighted:
        status = eps.sum(axis=0) * scale
        effusiveness = eps.sum(axis=1) * scale
    else:
        status = presence.sum(axis=0) * scale
        effusiveness = presence.sum(axis=1) * scale
    mutual = presence & presence.T
    reciprocity = mutual.sum(axis=1) * scale
    return ClassicalIndices(
        status=status,
        effusiveness=effusiveness,
        reciprocity=reciprocity,
        density=float(status.mean()),
        cohesion=float(reciprocity.mean()),
        status_heterogeneity=float(status.var()),
        weighted=weighted,
    )
