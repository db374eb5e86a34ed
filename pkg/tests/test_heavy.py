from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from canramsey.constants import LayerConstants
from canramsey.graph import ColouredGraph, GnpSpec, Graph, complete_graph, cycle_graph, sample_gnp, star_graph
from canramsey.heavy import (
    RAINBOW_VERTEX,
    STAR,
    LayerSystem,
    admissible_extension,
    allocation_violations,
    bad_vertices,
    build_layers,
    classify_edges,
    classify_heavy,
    count_layered_paths,
    extract_light_set,
    heavy_lemma_verify,
    heavy_orientation,
    lex_via_orientation,
    light_orientation,
    validate_layers,
)

from conftest import random_coloured


def smaller_endpoint(g: Graph) -> ColouredGraph:
    return ColouredGraph.from_colours(g, [min(e) for e in g.edges])


def rainbow(g: Graph) -> ColouredGraph:
    return ColouredGraph.from_colours(g, list(range(g.m)))


def circulant_fixture(n=40, reach=10):
    """u owns the edges to u+1..u+reach in colour u; every other edge of K_n
    gets its own colour."""
    g = complete_graph(n)
    cols, fresh = [], n
    for u, v in g.edges:
        if (v - u) % n <= reach:
            cols.append(u)
        elif (u - v) % n <= reach:
            cols.append(v)
        else:
            cols.append(fresh)
            fresh += 1
    return ColouredGraph.from_colours(g, cols), g


# -- heaviness ----------------------------------------------------------------------

def test_classify_heavy_examples():
    g = star_graph(4)  # centre 0
    cg = ColouredGraph.from_colours(g, [5, 5, 7, 8])
    cl = classify_heavy(cg, 0.5)
    assert cl.heavy[0] == 0  # colours relabelled in order: 5 -> 0
    assert cl.multiplicity[0] == 2
    cl = classify_heavy(cg, 0.6)
    assert cl.heavy[0] == RAINBOW_VERTEX and 0 in cl.rainbow_vertices()
    # ties go to the smallest colour id
    cg = ColouredGraph.from_colours(g, [3, 3, 1, 1])
    assert classify_heavy(cg, 0.5).heavy[0] == cg.colour(0, 3)
    with pytest.raises(ValueError):
        classify_heavy(cg, 1.0)


def test_isolated_vertex_is_rainbow():
    cg = ColouredGraph.from_colours(Graph(3, [(0, 1)]), [0])
    cl = classify_heavy(cg, 0.1)
    assert cl.heavy == (0, 0, RAINBOW_VERTEX)


@given(st.integers(3, 12), st.floats(0.2, 0.9), st.integers(1, 5), st.integers(0, 10**6), st.floats(0.05, 0.95))
@settings(max_examples=40, deadline=None)
def test_classification_recount(n, p, r, seed, alpha):
    cg = random_coloured(n, p, r, seed)
    cl = classify_heavy(cg, alpha)
    for v in range(n):
        cols = [cg.colour(v, w) for w in cg.graph.neighbours(v)]
        heavy = sorted(c for c in set(cols) if cols.count(c) >= alpha * len(cols))
        if cl.heavy[v] == RAINBOW_VERTEX:
            assert not heavy or not cols
        else:
            assert cl.heavy[v] in heavy
    lam = cl.allocation(range(n))
    assert allocation_violations(cg, lam, alpha) == cl.rainbow_vertices()


# -- edge classes and STAR ------------------------------------------------------------

def test_edge_classes_with_star():
    g = cycle_graph(4)
    cg = ColouredGraph.from_colours(g, [0, 1, 0, 2])  # (0,1),(0,3),(1,2),(2,3)
    lam = {0: 0, 1: STAR, 2: STAR, 3: 2}
    t = classify_edges(cg, range(4), lam)
    rows = {(r["u"], r["v"]): r for r in t.rows()}
    assert rows[(1, 2)]["balanced"] is False  # STAR == STAR
    assert rows[(1, 2)]["totally_light"] is True  # no edge carries STAR
    assert rows[(0, 1)]["balanced"] and not rows[(0, 1)]["u_light"] and rows[(0, 1)]["v_light"]
    assert rows[(2, 3)]["v_light"] is False
    assert t.count(balanced=True, totally_light=True) == 1  # (0,3): colours 1 vs lambda 0, 2
    with pytest.raises(ValueError, match="lambda undefined"):
        classify_edges(cg, range(4), {0: 0})


@given(st.integers(4, 14), st.floats(0.3, 0.9), st.integers(1, 4), st.integers(0, 10**6), st.floats(0.1, 0.6))
@settings(max_examples=40, deadline=None)
def test_orientation_invariants(n, p, r, seed, alpha):
    cg = random_coloured(n, p, r, seed)
    lam = classify_heavy(cg, alpha).allocation(range(n))
    d = heavy_orientation(cg, range(n), lam)
    for a, b in d.arcs:
        c = cg.colour(a, b)
        assert c == lam[a] and c != lam[b] and lam[a] != lam[b]
    d = light_orientation(cg, range(n), lam)
    light = {(min(u, v), max(u, v)) for u, v in cg.graph.edges if cg.colour(u, v) != lam[u] or cg.colour(u, v) != lam[v]}
    assert {(min(a, b), max(a, b)) for a, b in d.arcs} == light
    for a, b in d.arcs:
        assert cg.colour(a, b) != lam[a]  # out-degree counts light edges at the tail


# -- heavy-vertex lemma -------------------------------------------------------------

def test_heavy_lemma_circulant_fixture():
    cg, g = circulant_fixture()
    lam = {u: cg.colour(u, (u + 1) % 40) for u in range(40)}
    rep = heavy_lemma_verify(cg, range(40), lam, 0.2, p=1.0)
    assert rep.precondition == []
    assert rep.part1 and rep.part2 and rep.part3 and rep.passed
    assert rep.light_set.W == [16, 17, 18, 19, 20]
    assert rep.light_set.v0_size == 24
    assert rep.light_set.min_light_degree == 25


def test_light_set_recount():
    cg, g = circulant_fixture()
    lam = {u: cg.colour(u, (u + 1) % 40) for u in range(40)}
    res = extract_light_set(cg, range(40), lam, 1.0)
    rest = set(range(40)) - set(res.W)
    for w in res.W:
        light = sum(1 for x in rest if cg.colour(w, x) != lam[w])
        assert light >= res.light_threshold
    assert len(res.W) == 5


G400 = [(0, 5, 458, 55), (1, 3, 463, 52), (2, 6, 453, 54)]


@pytest.mark.parametrize("seed,viol,balanced,v0", G400)
def test_heavy_lemma_on_random_graph(seed, viol, balanced, v0):
    g = sample_gnp(GnpSpec(400, 0.1, seed))
    cg = smaller_endpoint(g)
    U = sorted(np.argsort(-g.degrees(), kind="stable")[:80].tolist())
    lam = classify_heavy(cg, 0.05).allocation(U)
    rep = heavy_lemma_verify(cg, U, lam, 0.05, p=0.1)
    assert rep.precondition and rep.precondition[0].startswith(f"{viol} vertices")
    # alpha p |U| = 0.4 < 1: any vertex with a neighbour in U is bad
    assert not rep.part1 and len(rep.bad_vertices) == 400
    assert rep.part2 and rep.balanced == balanced and rep.balanced_bound == pytest.approx(288)
    assert rep.part3 and len(rep.light_set.W) == 10 and rep.light_set.v0_size == v0


def test_bad_vertices_recount():
    cg = random_coloured(15, 0.5, 3, 4)
    U = list(range(8))
    lam = {u: u % 3 for u in U}
    got = bad_vertices(cg, U, lam, 1.5)
    want = [v for v in range(15) if any(sum(1 for u in U if cg.graph.has_edge(v, u) and lam[u] == c) > 1.5 for c in range(3))]
    assert got == want


# -- lexicographic copies through the heavy orientation ------------------------------------

def test_lex_via_orientation_c4():
    g = cycle_graph(4)
    cg = ColouredGraph.from_mapping(g, {(0, 1): 0, (1, 2): 1, (2, 3): 2, (0, 3): 0})
    lam = {0: 0, 1: 1, 2: 2, 3: 3}
    res = lex_via_orientation(cg, range(4), lam, 0.3, 2, p=1.0)
    assert res.branch == "asymptotic-regime"
    assert res.missing == [0] and list(res.witnesses) == [1]
    w = res.witnesses[1]
    assert w.sigma.order == (0, 1, 2, 3) and w.embedding == (0, 1, 2, 3)
    assert w.verify(cg, g)


def test_lex_via_orientation_balanced_branch():
    g = complete_graph(6)
    res = lex_via_orientation(rainbow(g), range(6), {u: 100 + u for u in range(6)}, 0.1, 2, p=1.0)
    assert res.branch == "balanced-totally-light" and res.count == 15


# -- layers -----------------------------------------------------------------------------

def brute_layered_pairs(ls: LayerSystem, cg: ColouredGraph) -> int:
    """Admissible P_4 for k = 2 by direct enumeration over (w, a, b, z)."""
    g = cg.graph
    U0, U1 = ls.layers
    lam0, lam1 = ls.lambdas
    total = 0
    for a, b in itertools.combinations(sorted(U1), 2):
        if not g.has_edge(a, b):
            continue
        cab = cg.colour(a, b)
        if not (lam1[a] == lam1[b] == STAR) and not (lam1[a] != lam1[b] and cab not in (lam1[a], lam1[b])):
            continue
        for w in U0:
            for z in U0:
                if len({w, a, b, z}) < 4 or not (g.has_edge(w, a) and g.has_edge(b, z)):
                    continue
                cols = [cg.colour(w, a), cab, cg.colour(b, z)]
                if len(set(cols)) < 3 or lam0[w] in cols or lam0[z] in cols:
                    continue
                if lam0[w] == lam0[z] and lam0[w] != STAR:
                    continue
                total += 1
    return total


def test_rainbow_layers_with_theta_override():
    g = sample_gnp(GnpSpec(400, 0.1, 0))
    cg = rainbow(g)
    b = build_layers(cg, range(100), 2, LayerConstants.default(2, theta=0.5))
    assert b.ok and b.system.sizes == [100, 5]
    assert b.system.is_star(0) and b.system.is_star(1)
    r = count_layered_paths(b.system, cg)
    assert r.counts == [1, 376]
    assert r.counts[1] == brute_layered_pairs(b.system, cg)


SMALLER = [(0, [0, 0]), (1, [5, 3487]), (2, [6, 3757]), (3, [3, 1989]), (4, [5, 3393])]


@pytest.mark.parametrize("seed,counts", SMALLER)
def test_smaller_endpoint_layers(seed, counts):
    g = sample_gnp(GnpSpec(800, 0.08, seed))
    cg = smaller_endpoint(g)
    b = build_layers(cg, range(200), 2, p=0.08)
    assert b.ok and b.system.sizes == [200, 10]
    assert any("heavy case" in s for s in b.notes)
    r = count_layered_paths(b.system, cg, keep_paths=True)
    assert r.counts == counts
    assert r.counts[1] == brute_layered_pairs(b.system, cg)
    lam0 = b.system.lambdas[0]
    for path in r.paths[1]:
        assert admissible_extension(cg, path[1:-1], path[0], path[-1], lam0)
    assert r.betas[0] == pytest.approx(1.19e-9, rel=0.01)
    assert r.betas[1] == pytest.approx(4.55e-17, rel=0.01)


def test_validate_layers_recomputes():
    g = sample_gnp(GnpSpec(800, 0.08, 1))
    cg = smaller_endpoint(g)
    ls = build_layers(cg, range(200), 2, p=0.08).system
    assert all(c.passed for c in validate_layers(ls, cg))
    bad = LayerSystem(ls.k, ls.n, ls.p, (ls.layers[0], ls.layers[0][:10]), (ls.lambdas[0], {u: STAR for u in ls.layers[0][:10]}), ls.constants)
    failed = {c.condition for c in validate_layers(bad, cg) if not c.passed}
    assert "disjoint" in failed


def test_mono_layers():
    g = sample_gnp(GnpSpec(400, 0.1, 0))
    cg = ColouredGraph.from_colours(g, [0] * g.m)
    b = build_layers(cg, range(100), 2)
    assert b.ok and count_layered_paths(b.system, cg).counts == [0, 0]
    b = build_layers(cg, range(100), 3)
    assert not b.ok and b.failure.layer == 1 and b.failure.condition == "light-set:V0-too-small"


def test_build_layers_validation():
    cg = rainbow(complete_graph(8))
    with pytest.raises(ValueError):
        build_layers(cg, range(5), 2)
    with pytest.raises(ValueError):
        build_layers(cg, range(2), 2, LayerConstants.default(3))
