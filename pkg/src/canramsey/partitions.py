"""Set partitions as restricted-growth strings (RGS).

An RGS ``b`` of length m has ``b[0] = 0`` and ``b[i] <= 1 + max(b[:i])``;
it encodes a colouring of m items up to renaming of colours.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np


@lru_cache(maxsize=None)
def bell(m: int) -> int:
    """Bell number via the Bell triangle."""
    if m < 0:
        raise ValueError("m must be non-negative")
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def normalize(colours: Sequence) -> tuple[int, ...]:
    """Relabel colours by order of first occurrence."""
    seen: dict = {}
    return tuple(seen.setdefault(c, len(seen)) for c in colours)


def is_rgs(seq: Sequence[int]) -> bool:
    top = -1
    for x in seq:
        if x < 0 or x > top + 1:
            return False
        top = max(top, x)
    return True


def iter_rgs(m: int) -> Iterator[tuple[int, ...]]:
    """All RGS of length m in lexicographic order (Bell(m) of them)."""
    if m == 0:
        yield ()
        return
    b = [0] * m
    mx = [0] * m  # mx[i] = max(b[:i+1])
    while True:
        yield tuple(b)
        i = m - 1
        while i > 0 and b[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        b[i] += 1
        mx[i] = max(mx[i - 1], b[i])
        for j in range(i + 1, m):
            b[j] = 0
            mx[j] = mx[i]


def iter_rgs_batches(m: int, batch: int = 4096) -> Iterator[np.ndarray]:
    """RGS in lexicographic order, stacked into int64 arrays of ``batch`` rows."""
    buf: list[tuple[int, ...]] = []
    for r in iter_rgs(m):
        buf.append(r)
        if len(buf) == batch:
            yield np.array(buf, dtype=np.int64).reshape(len(buf), m)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.int64).reshape(len(buf), m)


@dataclass(frozen=True)
class EdgePartition:
    """A colouring of ``edges`` up to colour renaming, as an RGS."""

    edges: tuple[tuple[int, int], ...]
    blocks: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != len(self.blocks):
            raise ValueError("one block id per edge required")
        if not is_rgs(self.blocks):
            raise ValueError(f"{self.blocks} is not a restricted-growth string")

    @classmethod
    def from_colours(cls, edges: Sequence[tuple[int, int]], colours: Sequence) -> "EdgePartition":
        return cls(tuple(tuple(e) for e in edges), normalize(colours))

    @property
    def n_blocks(self) -> int:
        return (max(self.blocks) + 1) if self.blocks else 0

    def classes(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n_blocks)]
        for e, b in zip(self.edges, self.blocks):
            out[b].append(e)
        return out

    def is_proper(self) -> bool:
        """No two edges sharing a vertex lie in the same block."""
        seen: set[tuple[int, int]] = set()
        for (u, v), b in zip(self.edges, self.blocks):
            for x in (u, v):
                if (x, b) in seen:
                    return False
                seen.add((x, b))
        return True

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "blocks": list(self.blocks)}


# -- colour patterns on cycles ------------------------------------------------

def dihedral_sequences(seq: Sequence) -> list[tuple]:
    """The 2L rotations and reflections of a cyclic sequence, in a fixed order."""
    s = list(seq)
    L = len(s)
    rev = s[::-1]
    return [tuple(s[r:] + s[:r]) for r in range(L)] + [tuple(rev[r:] + rev[:r]) for r in range(L)]


def cycle_code(colours: Sequence) -> int:
    """Canonical integer code of a cyclic colour sequence up to dihedral symmetry.

    Minimum over rotations/reflections of the first-occurrence RGS read as a
    base-L number; matches the compiled cycle kernel bit for bit.
    """
    L = len(colours)
    best = -1
    for seq in dihedral_sequences(colours):
        code = 0
        for b in normalize(seq):
            code = code * L + b
        if best < 0 or code < best:
            best = code
    return best
