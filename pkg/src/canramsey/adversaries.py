"""Colouring strategies standing in for the quantifier over all colourings.

Each strategy is a pure function of (graph, seed).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .graph import ColouredGraph, Graph

KINDS = (
    "random",
    "proper-greedy",
    "smaller-endpoint-lex",
    "heavy-pair",
    "alternating-2",
    "rainbow",
    "monochromatic",
)


@dataclass(frozen=True)
class Adversary:
    kind: str
    r: int = 3  # palette size for the random strategy

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown adversary {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.kind == "random" and self.r < 1:
            raise ValueError("random colouring needs r >= 1")

    @classmethod
    def parse(cls, name: str) -> "Adversary":
        """'random-3', 'random-3-colouring', 'proper-greedy', 'alternating-2-colouring', ..."""
        s = name.strip().lower().replace("coloring", "colouring")
        s = re.sub(r"-colouring$", "", s)
        m = re.fullmatch(r"random-(\d+)", s)
        if m:
            return cls("random", int(m.group(1)))
        if s == "mono":
            s = "monochromatic"
        return cls(s)

    @property
    def name(self) -> str:
        return f"random-{self.r}" if self.kind == "random" else self.kind

    def colour(self, g: Graph, seed: int = 0) -> ColouredGraph:
        return colour_with(self, g, seed)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def proper_greedy(g: Graph) -> list[int]:
    """Smallest colour unused at either endpoint, edges in sorted order."""
    used: list[set[int]] = [set() for _ in range(g.n)]
    out = []
    for u, v in g.edges:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        out.append(c)
    return out


def single_cycle_order(g: Graph) -> list[int] | None:
    """Vertex order around g when g's edges form one cycle, else None."""
    active = [v for v in range(g.n) if g.degree(v) > 0]
    if not active or any(g.degree(v) != 2 for v in active):
        return None
    order = [active[0]]
    prev = None
    while True:
        nxt = [w for w in g.neighbours(order[-1]) if w != prev]
        prev = order[-1]
        if nxt[0] == order[0]:
            break
        order.append(nxt[0])
    return order if len(order) == len(active) else None


def alternating_2(g: Graph) -> tuple[list[int], bool]:
    """Alternate two colours around an even cycle; any other graph falls back
    to the proper greedy colouring.  Returns (colours, degenerated)."""
    order = single_cycle_order(g)
    if order is None or len(order) % 2:
        return proper_greedy(g), True
    col = {}
    L = len(order)
    for i in range(L):
        a, b = order[i], order[(i + 1) % L]
        col[(min(a, b), max(a, b))] = i % 2
    return [col[e] for e in g.edges], False


def colour_with(adv: Adversary, g: Graph, seed: int = 0) -> ColouredGraph:
    kind = adv.kind
    if kind == "random":
        cols = _rng(seed).integers(0, adv.r, size=g.m).tolist()
    elif kind == "proper-greedy":
        cols = proper_greedy(g)
    elif kind == "smaller-endpoint-lex":
        cols = [u for u, _ in g.edges]
    elif kind == "heavy-pair":
        # each vertex owns one colour; each edge takes the colour of a random endpoint
        pick = _rng(seed).random(g.m) < 0.5
        cols = [u if f else v for (u, v), f in zip(g.edges, pick)]
    elif kind == "alternating-2":
        cols, _ = alternating_2(g)
    elif kind == "rainbow":
        cols = list(range(g.m))
    else:
        cols = [0] * g.m
    return ColouredGraph.from_colours(g, cols)


def degenerates(adv: Adversary, g: Graph) -> bool:
    """True when the alternating strategy falls back to proper-greedy on g."""
    return adv.kind == "alternating-2" and alternating_2(g)[1]
