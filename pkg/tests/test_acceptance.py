"""Exit criteria, one test each; the terminal summary prints a PASS/FAIL
line per criterion."""
from __future__ import annotations

import time
from fractions import Fraction

import numpy as np
import pytest

from canramsey.adversaries import Adversary
from canramsey.cycles import Tournament, cycle_census, find_cycle, find_transitive_subtournament, is_transitive_sequence
from canramsey.experiments import ExperimentConfig, cmd_k24_verify, cmd_threshold_sweep, hit_frequencies, inversions
from canramsey.graph import ColouredGraph, GnpSpec, Graph, complete_graph, cycle_graph, sample_gnp, verify_rg_properties
from canramsey.heavy import build_layers, count_layered_paths, validate_layers
from canramsey.partitions import bell
from canramsey.paths import rainbow_focused, trichotomy
from canramsey.patterns import PatternTargets, enumerate_lex_patterns, equality_mask, m2_density
from canramsey.regularity import RegularSystem, pair_regularity, transversal_cycle_count

from conftest import brute_paths

pytestmark = pytest.mark.acceptance


@pytest.mark.criterion(1, "C6 has 4 lexicographic patterns, 6 canonical patterns in all")
def test_c6_pattern_census():
    t0 = time.perf_counter()
    H = cycle_graph(6)
    assert len(enumerate_lex_patterns(H)) == 4
    targets = PatternTargets.of(H)
    masks = {targets.mono, targets.rainbow, *targets.lex_masks}
    assert len(masks) == 6
    assert equality_mask([0] * 6) == targets.mono
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(2, "every partition of K_{2,4} has a weak-canonical C4; both sub-claims")
def test_k24_exhaustive():
    t0 = time.perf_counter()
    rep = cmd_k24_verify()
    assert rep.examined == bell(8) == 4140
    assert rep.weak_holds
    assert rep.proper_claim and rep.proper > 0
    assert rep.non_proper_claim and rep.non_proper_no_lex > 0
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(3, "maximum 2-density of C4..C12, K4 and K5")
def test_m2_identity():
    for k in range(2, 7):
        assert m2_density(cycle_graph(2 * k)) == Fraction(2 * k - 1, 2 * k - 2)
    assert m2_density(complete_graph(4)) == Fraction(5, 2)
    assert m2_density(complete_graph(5)) == 3


@pytest.mark.criterion(4, "transitive subtournaments by pigeonhole")
def test_transitive_subtournaments():
    t0 = time.perf_counter()
    for bits in range(64):
        t = Tournament.from_bits(4, bits)
        assert is_transitive_sequence(t, find_transitive_subtournament(t, 3))
    rng = np.random.default_rng(2024)
    for _ in range(10_000):
        t = Tournament.random(8, rng)
        seq = find_transitive_subtournament(t, 4)
        assert seq is not None and is_transitive_sequence(t, seq)
    assert find_transitive_subtournament(Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)]), 3) is None
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(5, "C4 census splits exactly by intersection with U; labelled = 4k x unlabelled")
def test_census_decomposition():
    k4 = cycle_census(complete_graph(4), 2)
    assert (k4.labelled, k4.unlabelled) == (24, 3)
    for seed in range(50):
        g = sample_gnp(GnpSpec(30, 0.3, seed))
        rng = np.random.default_rng(seed)
        for _ in range(20):
            U = rng.choice(30, size=int(rng.integers(0, 31)), replace=False).tolist()
            c = cycle_census(g, 2, U)
            assert c.labelled == sum(c.by_intersection)
            assert c.labelled == 4 * 2 * c.unlabelled


@pytest.mark.criterion(6, "rainbow focused graph equals brute-force rainbow-path existence")
def test_rainbow_focused_oracle():
    for seed in range(100):
        g = sample_gnp(GnpSpec(12, 0.5, seed))
        cols = np.random.default_rng(10_000 + seed).integers(0, 5, size=g.m).tolist()
        cg = ColouredGraph.from_colours(g, cols)
        for L in (4, 6):
            want = set()
            for path in brute_paths(g, L):
                pc = [cg.colour(a, b) for a, b in zip(path, path[1:])]
                if len(set(pc)) == L - 1:
                    want.add((min(path[0], path[-1]), max(path[0], path[-1])))
            gam = rainbow_focused(cg, L)
            assert set(gam.gamma.edges) == want
            assert gam.validate()


@pytest.mark.criterion(7, "G(2000, 0.05) has the four typical properties at eps = 0.1")
def test_random_graph_properties():
    failures = {}
    for seed in range(10):
        g = sample_gnp(GnpSpec(2000, 0.05, seed))
        rep = verify_rg_properties(g, 0.05, 0.1, seed=seed)
        for c in rep.failures():
            w = c.witness or {}
            count = w.get("violators") if c.name == "degrees" else w.get("count")
            failures.setdefault(seed, []).append(f"{c.name}[{c.mode}]: {count} violators")
    summary = "; ".join(f"seed {s}: " + ", ".join(v) for s, v in sorted(failures.items()))
    assert not failures, summary


@pytest.mark.criterion(8, "rainbow G(400, 0.15) gives a dense focused graph; mono gives a mono C4")
def test_trichotomy_sanity():
    t0 = time.perf_counter()
    for seed in range(3):
        g = sample_gnp(GnpSpec(400, 0.15, seed))
        rain = Adversary("rainbow").colour(g)
        res = trichotomy(rain, 2, 0.25)
        assert "gamma-dense" in res.outcomes
        assert res.density.mode in ("exact", "certified")
        mono = Adversary("monochromatic").colour(g)
        has_c4 = find_cycle(g, 4).cycle is not None
        res = trichotomy(mono, 2, 0.25)
        assert ("mono-C2k" in res.outcomes) == has_c4
    assert time.perf_counter() - t0 < 120


@pytest.mark.criterion(9, "layer construction re-validates on 5 seeds; path counts project")
def test_layer_golden_runs():
    for seed in range(5):
        g = sample_gnp(GnpSpec(800, 0.08, seed))
        cg = ColouredGraph.from_colours(g, [min(e) for e in g.edges])
        b = build_layers(cg, range(200), 2, p=0.08)
        assert b.ok, b.failure
        checks = validate_layers(b.system, cg)
        assert {c.condition for c in checks} >= {"disjoint", "i", "ii", "iii", "iv", "v"}
        assert all(c.passed for c in checks)
        r = count_layered_paths(b.system, cg, keep_paths=True)
        for ell in range(1, len(r.paths)):
            inner = set(r.paths[ell - 1])
            assert all(path[1:-1] in inner for path in r.paths[ell])
            assert len(r.paths[ell]) == r.counts[ell]


@pytest.mark.criterion(10, "random-3 hit frequency is non-decreasing in p (<= 1 inversion)")
def test_sweep_monotone():
    t0 = time.perf_counter()
    grid = [round(0.1 * i, 1) for i in range(1, 11)]
    cfg = ExperimentConfig(k=2, n=[200], c=grid, seeds=list(range(50)), adversaries=["random-3"], timings=False)
    freqs = [f for _, f in hit_frequencies(cmd_threshold_sweep(cfg))]
    assert len(freqs) == 10
    assert inversions(freqs) <= 1, freqs
    assert time.perf_counter() - t0 < 600


def path_join_count(J: RegularSystem) -> int:
    """Join class-to-class paths as walk counts keyed by (start, end)."""
    L = J.length
    g = J.graph
    walks = {(v, v): 1 for v in J.classes[0]}
    for i in range(1, L):
        nxt: dict[tuple[int, int], int] = {}
        for (s, e), c in walks.items():
            for w in J.classes[i]:
                if g.has_edge(e, w):
                    nxt[(s, w)] = nxt.get((s, w), 0) + c
        walks = nxt
    return sum(c for (s, e), c in walks.items() if g.has_edge(e, s))


@pytest.mark.criterion(11, "half-split pair gives deviation 3/4; transversal counts match oracles")
def test_regularity_module():
    half = Graph(16, [(a, b) for a in range(4) for b in range(8, 12)])
    r = pair_regularity(half, range(8), range(8, 16), 0.1, 1, mode="exact")
    assert r.verdict == "irregular"
    assert r.witness == ((0, 1, 2, 3), (8, 9, 10, 11))
    assert r.deviation == Fraction(3, 4)
    for L, u in ((3, 4), (4, 3), (5, 3), (6, 2)):
        classes = tuple(tuple(range(i * u, (i + 1) * u)) for i in range(L))
        edges = [(a, b) for i in range(L) for a in classes[i] for b in classes[(i + 1) % L]]
        J = RegularSystem(Graph(L * u, edges), classes)
        assert transversal_cycle_count(J).count == u**L
    rng = np.random.default_rng(11)
    for t in range(20):
        L = int(rng.integers(3, 7))
        u = int(rng.integers(2, 7))
        g = sample_gnp(GnpSpec(L * u, float(rng.uniform(0.2, 0.8)), 500 + t))
        J = RegularSystem(g, tuple(tuple(range(i * u, (i + 1) * u)) for i in range(L)))
        assert transversal_cycle_count(J).count == path_join_count(J)
