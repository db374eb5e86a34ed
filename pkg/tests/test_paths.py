from __future__ import annotations

import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from canramsey.graph import ColouredGraph, GnpSpec, Graph, complete_graph, cycle_graph, sample_gnp
from canramsey.paths import (
    count_paths,
    is_locally_dense,
    rainbow_focused,
    trichotomy,
    well_distributed_stat,
)

from conftest import brute_paths, random_coloured


@given(st.integers(3, 10), st.floats(0.2, 0.8), st.integers(0, 10**6), st.integers(3, 5))
@settings(max_examples=40, deadline=None)
def test_path_counts_match_enumeration(n, p, seed, L):
    g = sample_gnp(GnpSpec(n, p, seed))
    t = count_paths(g, L)
    want = np.zeros((n, n), dtype=np.int64)
    for path in brute_paths(g, L):
        want[path[0], path[-1]] += 1
    assert np.array_equal(t.counts, want)
    assert t.total() == len(brute_paths(g, L)) // 2
    assert np.array_equal(t.per_vertex, want.sum(axis=1))


def test_path_counts_known_values():
    # K5: ordered paths on 4 vertices between fixed endpoints = 3 * 2
    t = count_paths(complete_graph(5), 4)
    assert t.pair(0, 1) == 6 and t.pair(2, 2) == 0
    with pytest.raises(ValueError):
        count_paths(complete_graph(5), 2)


@given(st.integers(4, 9), st.floats(0.3, 0.9), st.integers(1, 5), st.integers(0, 10**6), st.integers(3, 5))
@settings(max_examples=40, deadline=None)
def test_rainbow_focused_matches_enumeration(n, p, r, seed, L):
    cg = random_coloured(n, p, r, seed)
    gam = rainbow_focused(cg, L)
    want = set()
    for path in brute_paths(cg.graph, L):
        cols = [cg.colour(a, b) for a, b in zip(path, path[1:])]
        if len(set(cols)) == L - 1:
            want.add((min(path[0], path[-1]), max(path[0], path[-1])))
    assert set(gam.gamma.edges) == want
    assert gam.validate()


def test_rainbow_focused_rejects_bad_witness():
    cg = ColouredGraph.from_colours(cycle_graph(5), [0, 1, 2, 3, 4])
    gam = rainbow_focused(cg, 3)
    assert gam.validate() and gam.gamma.m == 5
    assert gam.witness[(0, 2)] == (0, 1, 2)
    gam.witness[(0, 2)] = (0, 3, 2)  # 0-3 is not an edge of the 5-cycle
    assert not gam.validate()


def brute_min_edges(g: Graph, s: int) -> int:
    return min(sum(1 for a, b in combinations(S, 2) if g.has_edge(a, b)) for S in combinations(range(g.n), s))


@given(st.integers(4, 10), st.floats(0.2, 0.95), st.integers(0, 10**6), st.floats(0.3, 0.8), st.floats(0.05, 0.9))
@settings(max_examples=50, deadline=None)
def test_density_exact_and_certificate_sound(n, p, seed, rho, d):
    g = sample_gnp(GnpSpec(n, p, seed))
    s = max(2, math.ceil(rho * n - 1e-12))
    truth = brute_min_edges(g, s) >= d * math.comb(s, 2)
    exact = is_locally_dense(g, rho, d, budget=10**6)
    assert exact.mode == "exact" and exact.dense == truth
    if exact.witness is not None:
        assert len(exact.witness) == s
    # tiny budget forces the certificate or sampling, which can never wrongly claim density
    rep = is_locally_dense(g, rho, d, budget=1, seed=seed)
    if rep.verdict == "dense":
        assert rep.mode in ("certified", "exact") and truth
    if rep.verdict == "witness":
        assert not truth


def test_density_validation():
    with pytest.raises(ValueError):
        is_locally_dense(complete_graph(4), 0, 0.5)


def test_well_distributed_stat():
    g = sample_gnp(GnpSpec(30, 0.3, 2))
    st_ = well_distributed_stat(g, 4, 0.3, 0.01)
    t = count_paths(g, 4)
    assert st_.threshold == pytest.approx(2 * 30**2 * 0.3**3)
    assert st_.mass == sum(c for _, _, c in t.rows() if c > st_.threshold)
    assert st_.passed == (st_.mass <= st_.bound)


def test_trichotomy_outcomes():
    g = complete_graph(12)
    rain = ColouredGraph.from_colours(g, list(range(g.m)))
    mono = ColouredGraph.from_colours(g, [0] * g.m)
    lexc = ColouredGraph.from_colours(g, [u for u, _ in g.edges])
    assert "gamma-dense" in trichotomy(rain, 2, 0.25).outcomes
    r = trichotomy(mono, 2, 0.25)
    assert "mono-C2k" in r.outcomes and "gamma-dense" not in r.outcomes
    assert r.mono.verify(mono, cycle_graph(4))
    r = trichotomy(lexc, 2, 0.25)
    assert "lex-all-C2k" in r.outcomes and r.lex_missing == 0
    with pytest.raises(ValueError):
        trichotomy(rain, 1, 0.25)


def test_rainbow_clique_is_gamma_dense_and_alternating_c4_is_empty():
    g = complete_graph(12)
    res = trichotomy(ColouredGraph.from_colours(g, list(range(g.m))), 2, 0.5, d=0.1)
    assert res.outcomes == {"gamma-dense"} and res.gamma_edges == 66
    alt = ColouredGraph.from_colours(cycle_graph(4), [0, 1, 1, 0])  # (0,1),(0,3),(1,2),(2,3)
    assert trichotomy(alt, 2, 0.25).outcomes == set()
