from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from canramsey.adversaries import KINDS, Adversary, alternating_2, degenerates, proper_greedy, single_cycle_order
from canramsey.graph import GnpSpec, complete_graph, cycle_graph, sample_gnp
from canramsey.patterns import canonical_profile


def test_parse_names():
    assert Adversary.parse("random-3") == Adversary("random", 3)
    assert Adversary.parse("random-5-colouring").r == 5
    assert Adversary.parse("Alternating-2-coloring").kind == "alternating-2"
    assert Adversary.parse("mono").kind == "monochromatic"
    assert Adversary("random", 4).name == "random-4"
    with pytest.raises(ValueError):
        Adversary.parse("sneaky")
    with pytest.raises(ValueError):
        Adversary("random", 0)


@pytest.mark.parametrize("kind", KINDS)
def test_strategies_are_deterministic(kind):
    g = sample_gnp(GnpSpec(30, 0.2, 1))
    adv = Adversary(kind)
    a, b = adv.colour(g, 7), adv.colour(g, 7)
    assert a.colours == b.colours and len(a.colours) == g.m


@given(st.integers(2, 25), st.floats(0.05, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_proper_greedy_is_proper(n, p, seed):
    g = sample_gnp(GnpSpec(n, p, seed))
    cols = proper_greedy(g)
    for v in range(n):
        at_v = [c for (a, b), c in zip(g.edges, cols) if v in (a, b)]
        assert len(at_v) == len(set(at_v))
    assert max(cols, default=-1) < 2 * max(int(g.degrees().max()) if n else 0, 1)


def test_smaller_endpoint_and_rainbow_and_mono():
    g = complete_graph(5)
    assert Adversary("smaller-endpoint-lex").colour(g).colours == tuple(normalise_first(u for u, _ in g.edges))
    assert Adversary("rainbow").colour(g).n_colours == g.m
    assert Adversary("monochromatic").colour(g).n_colours == 1


def normalise_first(xs):
    seen = {}
    return [seen.setdefault(x, len(seen)) for x in xs]


def test_heavy_pair_uses_an_endpoint_colour():
    g = sample_gnp(GnpSpec(20, 0.3, 2))
    cg = Adversary("heavy-pair").colour(g, 3)
    raw = {}
    for (u, v), c in zip(g.edges, cg.colours):
        raw.setdefault(c, set()).add((u, v))
    # every colour class is a star: all its edges share the owning vertex
    for edges in raw.values():
        assert set.intersection(*[set(e) for e in edges])


def test_alternating_on_even_cycle():
    g = cycle_graph(6)
    assert single_cycle_order(g) is not None
    cols, degenerate = alternating_2(g)
    assert not degenerate and set(cols) == {0, 1}
    cg = Adversary("alternating-2").colour(g)
    assert not canonical_profile(cg, cycle_graph(4)).weak
    for v in range(6):
        a, b = [cg.colour(v, w) for w in g.neighbours(v)]
        assert a != b


def test_alternating_degenerates_elsewhere():
    g = complete_graph(5)
    adv = Adversary("alternating-2")
    assert degenerates(adv, g)
    assert adv.colour(g).colours == Adversary("proper-greedy").colour(g).colours
    assert degenerates(adv, cycle_graph(5))
    assert not degenerates(Adversary("rainbow"), g)
