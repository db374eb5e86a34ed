from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from canramsey.graph import GnpSpec, Graph, OrientedGraph, complete_bipartite, sample_gnp
from canramsey.regularity import (
    EquitablePartition,
    RegularSystem,
    as_fraction,
    p_density,
    pair_regularity,
    reduced_digraph,
    transversal_cycle_count,
    upper_uniformity_check,
    witness_deviation,
)

from conftest import all_subsets


def half_split():
    """|A| = |B| = 8, edges exactly between A1 = 0..3 and B1 = 8..11."""
    return Graph(16, [(a, b) for a in range(4) for b in range(8, 12)])


def random_bipartite():
    rng = np.random.default_rng(1)
    edges = [(a, b) for a in range(12) for b in range(12, 24) if rng.random() < 0.5]
    return Graph(24, edges)


def test_as_fraction_reads_decimals():
    assert as_fraction(0.3) == Fraction(3, 10)
    assert as_fraction(2) == 2
    assert as_fraction(Fraction(1, 7)) == Fraction(1, 7)


def test_p_density():
    g = complete_bipartite(2, 3)
    assert p_density(g, [0, 1], [2, 3, 4], 0.5) == 2
    with pytest.raises(ValueError):
        p_density(g, [0, 1], [1, 2], 1)
    with pytest.raises(ValueError):
        p_density(g, [], [2], 1)


def test_half_split_is_irregular():
    g = half_split()
    r = pair_regularity(g, range(8), range(8, 16), 0.1, 1)
    assert r.verdict == "irregular" and r.certified and r.mode == "exact"
    assert r.witness == ((0, 1, 2, 3), (8, 9, 10, 11))
    assert r.deviation == Fraction(3, 4) and r.density == Fraction(1, 4)
    assert witness_deviation(g, range(8), range(8, 16), r.witness, 1) == r.deviation


def test_complete_bipartite_is_regular():
    r = pair_regularity(complete_bipartite(6, 7), range(6), range(6, 13), 0.1, 1)
    assert r.regular and r.certified and r.deviation == 0


def test_random_bipartite_golden():
    g = random_bipartite()
    A, B = range(12), range(12, 24)
    r = pair_regularity(g, A, B, 0.45, 0.5)
    assert r.verdict == "irregular"
    assert r.deviation == Fraction(23, 36) and r.density == Fraction(35, 36)
    assert r.witness == ((0, 1, 2, 7, 9, 10), (14, 15, 16, 17, 19, 21))
    assert witness_deviation(g, A, B, r.witness, 0.5) == r.deviation


def brute_max_deviation(g, A, B, delta, p):
    base = p_density(g, A, B, p)
    xmin = max(1, -(-delta * len(A) // 1))
    ymin = max(1, -(-delta * len(B) // 1))
    best = Fraction(0)
    for X in all_subsets(A, int(xmin)):
        for Y in all_subsets(B, int(ymin)):
            best = max(best, abs(p_density(g, X, Y, p) - base))
    return best


@given(st.integers(0, 10**6), st.floats(0.2, 0.8), st.sampled_from([0.1, 0.3, 0.5]), st.sampled_from([0.5, 1]))
@settings(max_examples=25, deadline=None)
def test_exact_mode_matches_brute_force(seed, p, delta, pscale):
    rng = np.random.default_rng(seed)
    A, B = list(range(6)), list(range(6, 12))
    g = Graph(12, [(a, b) for a in A for b in B if rng.random() < p])
    if g.m == 0:
        return
    r = pair_regularity(g, A, B, delta, pscale)
    dev = brute_max_deviation(g, A, B, delta, as_fraction(pscale))
    assert r.deviation == dev
    assert r.regular == (dev <= delta)
    if r.witness:
        X, Y = r.witness
        assert len(X) >= delta * 6 and len(Y) >= delta * 6
        assert witness_deviation(g, A, B, r.witness, pscale) == r.deviation


def test_sampled_mode_only_refutes():
    g = half_split()
    r = pair_regularity(g, range(8), range(8, 16), 0.1, 1, mode="sampled", samples=300)
    assert r.verdict == "irregular"
    assert witness_deviation(g, range(8), range(8, 16), r.witness, 1) > 0.1
    r = pair_regularity(complete_bipartite(6, 6), range(6), range(6, 12), 0.1, 1, mode="sampled")
    assert r.verdict == "sampled-no-refutation" and not r.certified
    with pytest.raises(ValueError):
        pair_regularity(g, range(8), range(8, 16), 0.1, 1, mode="fast")


def test_oriented_pairs_count_arcs_one_way():
    d = OrientedGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert p_density(d, [0, 1], [2, 3], 1) == 1
    assert p_density(d, [2, 3], [0, 1], 1) == 0


# -- upper uniformity -----------------------------------------------------------------

def brute_uniformity_fails(g: Graph, xi: float, D: float, p: float) -> bool:
    n = g.n
    smin = max(1, int(np.ceil(xi * n - 1e-12)))
    for X in all_subsets(range(n), smin):
        rest = [v for v in range(n) if v not in X]
        for Y in all_subsets(rest, smin):
            e = sum(1 for x in X for y in Y if g.has_edge(x, y))
            if e > D * p * len(X) * len(Y):
                return True
    return False


@given(st.integers(4, 7), st.floats(0.2, 0.9), st.integers(0, 10**6), st.sampled_from([1.1, 1.5, 2.5]))
@settings(max_examples=20, deadline=None)
def test_uniformity_exact_matches_brute_force(n, p, seed, D):
    g = sample_gnp(GnpSpec(n, p, seed))
    r = upper_uniformity_check(g, 0.25, D, p)
    assert r.mode == "exact"
    assert (r.verdict == "witness") == brute_uniformity_fails(g, 0.25, D, p)
    if r.witness:
        X, Y = r.witness
        assert not set(X) & set(Y)
        assert sum(1 for x in X for y in Y if g.has_edge(x, y)) == r.edges > r.bound


def test_uniformity_finds_planted_clique():
    g = sample_gnp(GnpSpec(200, 0.05, 0))
    planted = Graph(200, set(g.edges) | set(itertools.combinations(range(20), 2)))
    r = upper_uniformity_check(planted, 0.05, 2.0, 0.05)
    assert r.verdict == "witness"
    X, Y = r.witness
    assert set(X) | set(Y) <= set(range(20)) and len(X) == len(Y) == 10
    assert r.edges == 100 and r.bound == pytest.approx(10.0)


# -- partitions and reduced digraphs ---------------------------------------------------

def test_equitable_partition():
    P = EquitablePartition.random(50, 6, 0.2, seed=1)
    assert P.k == 6 and len(P.classes[0]) == 2
    assert EquitablePartition.from_json(50, P.to_json(), 0.2) == P
    with pytest.raises(ValueError):
        EquitablePartition(4, ((), (0, 1), (2,)), 0.1)
    with pytest.raises(ValueError):
        EquitablePartition(4, ((0, 1, 2), (3,)), 0.1)


def test_reduced_digraph_on_forward_blocks():
    # complete bipartite arcs i -> j for classes i < j
    classes = [tuple(range(5 * c, 5 * c + 5)) for c in range(4)]
    arcs = [(a, b) for i in range(4) for j in range(i + 1, 4) for a in classes[i] for b in classes[j]]
    d = OrientedGraph(20, arcs)
    P = EquitablePartition(20, ((), *classes), 0.1)
    R = reduced_digraph(d, P, 0.5, 0.2, 1)
    assert set(R.arcs) == {(i, j) for i in range(1, 5) for j in range(i + 1, 5)}
    assert all(R.certified.values())
    assert "1 -> 2" in R.to_dot()
    # theta = 0 still needs an arc
    assert set(reduced_digraph(d, P, 0, 0.2, 1).arcs) == set(R.arcs)


def test_reduced_digraph_random_golden():
    g = sample_gnp(GnpSpec(300, 0.2, 3))
    rr = np.random.default_rng(3)
    d = OrientedGraph.orient(g, rr.random(g.m) < 0.5)
    P = EquitablePartition.random(300, 6, 0.2, seed=3)
    R = reduced_digraph(d, P, 0.3, 0.2, 0.2)
    # every pair is refuted by sampling at this size
    assert R.arcs == {}


# -- regular systems -----------------------------------------------------------------------

def trace_count(J: RegularSystem) -> int:
    M = np.eye(J.u, dtype=np.int64)
    for i in range(J.length):
        M = M @ J.biadjacency(i)
    return int(np.trace(M))


def random_system(L, size, p, seed):
    g = sample_gnp(GnpSpec(L * size, p, seed))
    classes = tuple(tuple(range(i * size, (i + 1) * size)) for i in range(L))
    return RegularSystem(g, classes, p=p)


def test_transversal_count_matches_trace():
    J = random_system(4, 30, 0.3, 0)
    res = transversal_cycle_count(J, zeta=0.5, mu=1 / 4, n=120)
    assert res.count == trace_count(J) == 6291
    assert res.bound == pytest.approx(0.5 * (0.25 * 0.3 * 120) ** 4)


@pytest.mark.parametrize("L", [3, 5, 6])
def test_transversal_count_other_lengths(L):
    J = random_system(L, 8, 0.4, L)
    assert transversal_cycle_count(J).count == trace_count(J)


def test_transversal_count_monotone():
    J = random_system(4, 10, 0.3, 7)
    base = transversal_cycle_count(J).count
    extra = Graph(J.graph.n, set(J.graph.edges) | {(0, 10), (10, 20), (20, 30), (0, 30)})
    more = transversal_cycle_count(RegularSystem(extra, J.classes)).count
    assert more >= base + 1
    with pytest.raises(ValueError):
        transversal_cycle_count(J, cap=1)


def test_regular_system_validation():
    g = Graph(6)
    with pytest.raises(ValueError):
        RegularSystem(g, ((0,), (1,)))
    with pytest.raises(ValueError):
        RegularSystem(g, ((0,), (1,), (2, 3)))
    with pytest.raises(ValueError):
        RegularSystem(g, ((0,), (0,), (2,)))
