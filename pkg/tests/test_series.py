"""Power-series convergence and route-with-drains enumeration."""

from __future__ import annotations

import numpy as np
import pytest

from forestprox import (
    MAX_RWD_LENGTH,
    MAX_RWD_VERTICES,
    SizeGuardError,
    VertexRangeError,
    build_graph,
    enumerate_routes_with_drains,
    forest_accessibility,
    kirchhoff,
    series_partial_sum,
    weight_bound,
)
from randgraphs import random_graph

TINY_EDGE = build_graph(2, [(0, 1, 0.1)])


def test_weight_bound_fixtures():
    assert weight_bound(TINY_EDGE).bound == 0.5
    p3 = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    assert weight_bound(p3).bound == 0.25
    doubled = build_graph(3, [(0, 1, 0.04), (0, 1, 0.06), (1, 2, 0.05)])
    report = weight_bound(doubled)
    assert report.bound == 0.125
    assert report.max_pair_multiplicity == 2
    assert report.max_aggregated_weight == 0.1
    assert report.within_bound


def test_weight_bound_degenerate_graphs():
    lonely = build_graph(1, [])
    assert weight_bound(lonely).bound == np.inf
    assert weight_bound(lonely).within_bound
    empty = build_graph(4, [])
    assert weight_bound(empty).bound == np.inf
    assert weight_bound(empty).within_bound


def test_weight_bound_scales_with_alpha():
    assert weight_bound(TINY_EDGE, alpha=2.0).bound == 0.25
    assert weight_bound(TINY_EDGE, alpha=0.5).bound == 1.0
    # the aggregated weight 0.1 crosses the alpha = 10 bound of 0.05
    assert not weight_bound(TINY_EDGE, alpha=10.0).within_bound


def test_partial_sum_fixture():
    result = series_partial_sum(TINY_EDGE, max_len=1)
    assert np.array_equal(result.partial_sum, [[0.9, 0.1], [0.1, 0.9]])
    assert result.term_norms == (1.0, 0.2)

    limit = np.array([[11.0, 1.0], [1.0, 11.0]]) / 12.0
    long = series_partial_sum(TINY_EDGE, max_len=60)
    assert np.abs(long.partial_sum - limit).max() <= 1e-12
    assert long.within_bound
    assert len(long.term_norms) == 61
    assert long.term_norms[-1] < 1e-14


def test_zero_length_sum_is_identity():
    result = series_partial_sum(TINY_EDGE, max_len=0)
    assert np.array_equal(result.partial_sum, np.eye(2))
    assert result.term_norms == (1.0,)
    with pytest.raises(VertexRangeError):
        series_partial_sum(TINY_EDGE, max_len=-1)


def test_sum_converges_to_accessibility_inside_bound():
    rng = np.random.default_rng(113)
    for _ in range(100):
        g = random_graph(rng, max_vertices=5, max_edges=7, weight_lo=1e-4,
                         weight_hi=1.0)
        report = weight_bound(g)
        if not np.isfinite(report.bound):
            continue
        scale = 0.7 * report.bound / max(report.max_aggregated_weight, 1e-300)
        g = g.with_scaled_weights(min(scale, 1.0))
        acc = forest_accessibility(kirchhoff(g))
        result = series_partial_sum(g, max_len=60)
        assert result.within_bound
        assert np.abs(result.partial_sum - acc.matrix).max() <= 1e-8


def test_sum_reports_divergence_but_still_runs():
    heavy = build_graph(2, [(0, 1, 10.0)])
    result = series_partial_sum(heavy, max_len=12)
    assert not result.within_bound
    norms = result.term_norms
    assert all(b >= a for a, b in zip(norms[1:], norms[2:]))
    assert norms[-1] > 1e12
    assert np.isfinite(result.partial_sum).all()


def test_route_base_cases():
    r = enumerate_routes_with_drains(TINY_EDGE, 0, 0, 0)
    assert (r.even_weight, r.odd_weight) == (1.0, 0.0)
    assert r.signed_weight == 1.0
    r = enumerate_routes_with_drains(TINY_EDGE, 0, 1, 0)
    assert (r.even_weight, r.odd_weight) == (0.0, 0.0)
    # one step: move 0 -> 1 with no drain, or drain at 0
    r = enumerate_routes_with_drains(TINY_EDGE, 0, 1, 1)
    assert (r.even_weight, r.odd_weight) == (0.1, 0.0)
    r = enumerate_routes_with_drains(TINY_EDGE, 0, 0, 1)
    assert (r.even_weight, r.odd_weight) == (0.0, 0.1)
    assert r.signed_weight == -0.1


def test_routes_match_matrix_powers():
    rng = np.random.default_rng(127)
    for _ in range(12):
        directed = bool(rng.integers(2))
        g = random_graph(rng, max_vertices=4, max_edges=5, weight_lo=0.05,
                         weight_hi=0.9, directed=directed)
        power = np.eye(g.n)
        step = -kirchhoff(g).matrix
        for t in range(4):
            if t > 0:
                power = power @ step
            for i in range(g.n):
                for j in range(g.n):
                    r = enumerate_routes_with_drains(g, i, j, t)
                    assert abs(r.signed_weight - power[i, j]) <= 1e-12


def test_directed_routes_respect_orientation():
    arc = build_graph(2, [(0, 1, 0.2)], directed=True)
    # the only record converges on vertex 1, so nothing starts at 0
    r = enumerate_routes_with_drains(arc, 0, 0, 1)
    assert (r.even_weight, r.odd_weight) == (0.0, 0.0)
    # from 1 the record allows a move to 0 or a drain at 1
    r = enumerate_routes_with_drains(arc, 1, 0, 1)
    assert (r.even_weight, r.odd_weight) == (0.2, 0.0)
    r = enumerate_routes_with_drains(arc, 1, 1, 1)
    assert (r.even_weight, r.odd_weight) == (0.0, 0.2)


def test_route_enumeration_guards():
    with pytest.raises(SizeGuardError):
        enumerate_routes_with_drains(
            build_graph(MAX_RWD_VERTICES + 1, []), 0, 0, 1
        )
    with pytest.raises(SizeGuardError):
        enumerate_routes_with_drains(TINY_EDGE, 0, 0, MAX_RWD_LENGTH + 1)
    with pytest.raises(VertexRangeError):
        enumerate_routes_with_drains(TINY_EDGE, 0, 5, 1)
    with pytest.raises(VertexRangeError):
        enumerate_routes_with_drains(TINY_EDGE, 0, 0, -1)


def test_alpha_scales_the_series():
    rng = np.random.default_rng(131)
    for _ in range(20):
        g = random_graph(rng, max_vertices=4, max_edges=5, weight_lo=0.01,
                         weight_hi=0.05)
        alpha = float(rng.uniform(0.3, 2.0))
        scaled = series_partial_sum(g.with_scaled_weights(alpha), max_len=20)
        direct = series_partial_sum(g, max_len=20, alpha=alpha)
        assert np.abs(scaled.partial_sum - direct.partial_sum).max() <= 1e-12
