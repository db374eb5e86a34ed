from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from canramsey.partitions import (
    EdgePartition,
    bell,
    cycle_code,
    dihedral_sequences,
    is_rgs,
    iter_rgs,
    iter_rgs_batches,
    normalize,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


def test_bell_numbers():
    assert [bell(m) for m in range(10)] == BELL
    with pytest.raises(ValueError):
        bell(-1)


@pytest.mark.parametrize("m", range(8))
def test_iter_rgs_counts_set_partitions(m):
    seqs = list(iter_rgs(m))
    assert len(seqs) == bell(m) == len(set(seqs))
    assert seqs == sorted(seqs)
    assert all(is_rgs(s) for s in seqs)
    # oracle: distinct normalisations of all colourings with m colours
    assert set(seqs) == {normalize(c) for c in itertools.product(range(max(m, 1)), repeat=m)}


def test_batches_match_iterator():
    flat = [tuple(r) for b in iter_rgs_batches(6, batch=7) for r in b.tolist()]
    assert flat == list(iter_rgs(6))


@given(st.lists(st.integers(-5, 5), max_size=12))
def test_normalize_is_idempotent_rgs(xs):
    r = normalize(xs)
    assert is_rgs(r) and normalize(r) == r
    # same equality pattern
    assert all((xs[i] == xs[j]) == (r[i] == r[j]) for i in range(len(xs)) for j in range(len(xs)))


def test_is_rgs_rejects():
    assert not is_rgs((1, 0))
    assert not is_rgs((0, 2))
    assert is_rgs((0, 1, 0, 2))


def test_edge_partition():
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    p = EdgePartition.from_colours(edges, ["a", "b", "a", "b"])
    assert p.blocks == (0, 1, 0, 1)
    assert p.is_proper()
    assert p.classes() == [[(0, 1), (2, 3)], [(1, 2), (0, 3)]]
    assert not EdgePartition.from_colours(edges, [0, 0, 1, 1]).is_proper()
    with pytest.raises(ValueError):
        EdgePartition(tuple(edges), (1, 0, 0, 0))
    with pytest.raises(ValueError):
        EdgePartition(tuple(edges), (0, 0))


@given(st.lists(st.integers(0, 3), min_size=3, max_size=8))
def test_cycle_code_dihedral_invariant(cols):
    c = cycle_code(cols)
    assert all(cycle_code(s) == c for s in dihedral_sequences(cols))
    assert cycle_code([x + 7 for x in cols]) == c


def test_cycle_code_separates_patterns():
    assert cycle_code((0, 0, 1, 1)) != cycle_code((0, 1, 0, 1))
    assert cycle_code((0, 0, 0, 1)) == cycle_code((1, 0, 0, 0))
