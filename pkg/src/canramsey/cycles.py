"""Even-cycle census, fixed-length cycle search, oriented-cycle copy
counting, orientation minimisation and transitive subtournaments."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

import numpy as np

from . import kernels
from .graph import Graph, OrientedGraph

MAX_CYCLE_LENGTH = 12
DEFAULT_STATE_CAP = 10**7


# -- census ---------------------------------------------------------------

@dataclass
class CycleCensus:
    k: int
    labelled: int  # Z: injective homomorphisms of C_2k
    unlabelled: int
    by_intersection: list[int]  # Z^U_i for i = 0..2k
    U: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return 2 * self.k

    @property
    def per_dihedral(self) -> float:
        """labelled / 4k, the number of unlabelled copies."""
        return self.labelled / (4 * self.k)

    @property
    def per_rotation(self) -> float:
        """labelled / 2k, the alternative automorphism convention."""
        return self.labelled / (2 * self.k)

    def at_least(self, i: int) -> int:
        return sum(self.by_intersection[i:])

    def decomposition_holds(self) -> bool:
        return self.labelled == sum(self.by_intersection)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "labelled": self.labelled,
            "unlabelled": self.unlabelled,
            "labelled_over_4k": self.per_dihedral,
            "labelled_over_2k": self.per_rotation,
            "by_intersection": self.by_intersection,
            "U": list(self.U),
        }


def cycle_census(g: Graph, k: int, U: Sequence[int] = ()) -> CycleCensus:
    """Exact counts of C_2k copies, split by how many vertices lie in U."""
    L = 2 * k
    if not 3 <= L <= MAX_CYCLE_LENGTH:
        raise ValueError(f"2k must lie in 4..{MAX_CYCLE_LENGTH}")
    mask = np.zeros(g.n, dtype=np.uint8)
    us = sorted(set(int(u) for u in U))
    mask[us] = 1
    indptr, indices = g.csr("id")
    labelled, unlabelled, hist = kernels.cycle_census(indptr, indices, g.n, L, mask)
    return CycleCensus(k, int(labelled), int(unlabelled), [int(x) for x in hist], tuple(us))


# -- fixed-length cycle search -------------------------------------------------

@dataclass
class CycleSearch:
    cycle: tuple[int, ...] | None
    mode: str  # "exact" | "colour-coding"
    complete: bool  # True when absence is proven
    states: int = 0
    trials: int = 0


def _colour_coding(g: Graph, L: int, trials: int, rng: np.random.Generator) -> tuple[tuple[int, ...] | None, int]:
    """Randomised search for a colourful C_L; each trial succeeds with
    probability at least L!/L^L when a C_L exists."""
    n = g.n
    A = np.zeros((n, n), dtype=np.float32)
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1.0
    full = (1 << L) - 1
    for t in range(trials):
        col = rng.integers(0, L, size=n)
        starts = np.nonzero(col == 0)[0]
        if len(starts) == 0:
            continue
        # reach[S][i, w]: a colourful path from starts[i] to w using colour set S
        reach: dict[int, np.ndarray] = {1: np.zeros((len(starts), n), dtype=bool)}
        reach[1][np.arange(len(starts)), starts] = True
        for size in range(1, L):
            for S in [s for s in list(reach) if bin(s).count("1") == size]:
                nxt = (reach[S].astype(np.float32) @ A) > 0
                for c in range(1, L):
                    if S >> c & 1:
                        continue
                    T = S | (1 << c)
                    add = nxt & (col == c)[None, :]
                    reach[T] = reach.get(T, np.zeros_like(add)) | add
        if full not in reach:
            continue
        closing = reach[full] & (A[starts] > 0)
        hits = np.argwhere(closing)
        if len(hits) == 0:
            continue
        i, w = (int(x) for x in hits[0])
        # walk back through the colour sets
        path = [w]
        S = full
        cur = w
        while S != 1:
            S_prev = S & ~(1 << int(col[cur]))
            nbrs = [x for x in g.neighbours(cur) if reach[S_prev][i, x] and x not in path]
            cur = nbrs[0]
            path.append(cur)
            S = S_prev
        return tuple(reversed(path)), t + 1
    return None, trials


def find_cycle(
    g: Graph, length: int, state_cap: int = DEFAULT_STATE_CAP, trials: int = 200, seed: int = 0
) -> CycleSearch:
    """Exact DFS below ``state_cap`` visited states, colour coding above."""
    if not 3 <= length <= MAX_CYCLE_LENGTH:
        raise ValueError(f"cycle length must lie in 3..{MAX_CYCLE_LENGTH}")
    indptr, indices = g.csr("id")
    cyc, states, complete = kernels.find_cycle(indptr, indices, g.n, length, state_cap)
    if cyc is not None or complete:
        return CycleSearch(None if cyc is None else tuple(int(x) for x in cyc), "exact", complete, int(states))
    rng = np.random.Generator(np.random.PCG64(seed))
    found, used = _colour_coding(g, length, trials, rng)
    return CycleSearch(found, "colour-coding", False, int(states), used)


def is_cycle_in(g: Graph, cyc: Sequence[int]) -> bool:
    L = len(cyc)
    return len(set(cyc)) == L and all(g.has_edge(cyc[i], cyc[(i + 1) % L]) for i in range(L))


@dataclass
class TuranCheck:
    status: str  # "cycle-witness" | "bound-not-met" | "counterexample-at-this-size"
    edges: int
    bound: float
    witness: tuple[int, ...] | None = None
    mode: str | None = None

    def to_dict(self) -> dict:
        return {"status": self.status, "edges": self.edges, "bound": self.bound,
                "witness": list(self.witness) if self.witness else None, "mode": self.mode}


def relative_turan_check(g: Graph, sub: Graph, k: int, delta: float, p: float, **search) -> TuranCheck:
    """A subgraph with at least delta n p^2 edges should contain C_2k."""
    if not sub.is_subgraph_of(g):
        raise ValueError("sub is not a subgraph of g")
    bound = delta * g.n * p * p
    if sub.m < bound:
        return TuranCheck("bound-not-met", sub.m, bound)
    res = find_cycle(sub, 2 * k, **search)
    if res.cycle is not None:
        return TuranCheck("cycle-witness", sub.m, bound, res.cycle, res.mode)
    return TuranCheck("counterexample-at-this-size", sub.m, bound, None, res.mode)


# -- oriented cycles ----------------------------------------------------------

@dataclass(frozen=True)
class AcyclicCycleOrientation:
    """Orientation of C_L: ``bits[i] == 1`` means the arc i -> i+1 (mod L)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0/1")
        if len(set(self.bits)) == 1:
            raise ValueError("a directed cycle is not an acyclic orientation")

    @property
    def length(self) -> int:
        return len(self.bits)

    @classmethod
    def from_string(cls, s: str) -> "AcyclicCycleOrientation":
        return cls(tuple(int(c) for c in s.strip()))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_ordering(cls, rank: Sequence[int]) -> "AcyclicCycleOrientation":
        """Each edge points from its rank-smaller to its rank-larger end."""
        L = len(rank)
        return cls(tuple(int(rank[i] < rank[(i + 1) % L]) for i in range(L)))

    def arcs(self) -> list[tuple[int, int]]:
        L = self.length
        return [(i, (i + 1) % L) if b else ((i + 1) % L, i) for i, b in enumerate(self.bits)]

    def digraph(self) -> OrientedGraph:
        return OrientedGraph(self.length, self.arcs())


def all_acyclic_orientations(length: int) -> list[AcyclicCycleOrientation]:
    return [AcyclicCycleOrientation(b) for b in product((0, 1), repeat=length) if len(set(b)) > 1]


def count_orientation_copies(d: OrientedGraph, pattern: AcyclicCycleOrientation) -> int:
    """Labelled copies (injective homomorphisms) of the pattern in d."""
    if pattern.length > MAX_CYCLE_LENGTH:
        raise ValueError(f"pattern length exceeds {MAX_CYCLE_LENGTH}")
    op, oi, ip, ii = d.csr()
    return int(kernels.orientation_count(op, oi, ip, ii, d.n, np.array(pattern.bits, dtype=np.uint8)))


def iter_orientation_copies(
    d: OrientedGraph,
    pattern: AcyclicCycleOrientation,
    accept: Callable[[list[int], int], bool] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Embeddings of the pattern (emb[i] = image of pattern vertex i) in
    lexicographic order; ``accept(partial, w)`` can prune extensions."""
    L = pattern.length
    b = pattern.bits
    emb: list[int] = []
    used: set[int] = set()

    def rec() -> Iterator[tuple[int, ...]]:
        i = len(emb)
        if i == L:
            yield tuple(emb)
            return
        if i == 0:
            cands = range(d.n)
        else:
            v = emb[-1]
            cands = sorted(d.out_neighbours(v) if b[i - 1] else d.in_neighbours(v))
        for w in cands:
            if w in used:
                continue
            if i == L - 1:
                s = emb[0]
                if not (d.has_arc(w, s) if b[L - 1] else d.has_arc(s, w)):
                    continue
            if accept is not None and not accept(emb, w):
                continue
            emb.append(w)
            used.add(w)
            yield from rec()
            emb.pop()
            used.discard(w)

    yield from rec()


# -- orientation property -----------------------------------------------------

@dataclass
class OrientationEstimate:
    min_count: int
    orientation: OrientedGraph | None
    pattern: AcyclicCycleOrientation | None
    mode: str  # "exact" | "heuristic-upper-bound"
    evaluated: int

    def to_dict(self) -> dict:
        return {
            "min_count": self.min_count,
            "arcs": [list(a) for a in self.orientation.arcs] if self.orientation else None,
            "pattern": self.pattern.to_string() if self.pattern else None,
            "mode": self.mode,
            "evaluated": self.evaluated,
        }


def _labelled_cycles(g: Graph, L: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(path: list[int]) -> None:
        if len(path) == L:
            if g.has_edge(path[-1], path[0]):
                out.append(tuple(path))
            return
        for w in g.neighbours(path[-1]):
            if w not in path:
                path.append(w)
                rec(path)
                path.pop()

    for s in range(g.n):
        rec([s])
    return out


def _worst_pattern(d: OrientedGraph, patterns: list[AcyclicCycleOrientation]) -> tuple[int, AcyclicCycleOrientation]:
    best = None
    for pat in patterns:
        c = count_orientation_copies(d, pat)
        if best is None or c < best[0]:
            best = (c, pat)
    return best


def _pattern_classes(length: int) -> list[AcyclicCycleOrientation]:
    """One acyclic orientation per isomorphism class (rotations/reflections
    of the cycle give isomorphic digraphs with equal copy counts)."""
    seen: set[tuple[int, ...]] = set()
    reps = []
    for pat in all_acyclic_orientations(length):
        b = list(pat.bits)
        images = []
        for r in range(length):
            rot = b[r:] + b[:r]
            images.append(tuple(rot))
            # reflection reverses traversal, flipping every bit
            images.append(tuple(1 - x for x in reversed(rot)))
        key = min(images)
        if key not in seen:
            seen.add(key)
            reps.append(pat)
    return reps


def orientation_property_estimate(
    g: Graph, length: int, restarts: int = 50, seed: int = 0, exact_max_edges: int = 20, max_flips: int = 200
) -> OrientationEstimate:
    """Smallest worst-pattern copy count over orientations of g.

    Exact over all 2^e(g) orientations when e(g) <= ``exact_max_edges``;
    otherwise random restarts with greedy single-arc flips, whose result is
    an upper bound on the true minimum.
    """
    if g.m == 0:
        return OrientationEstimate(0, OrientedGraph(g.n), all_acyclic_orientations(length)[0], "exact", 1)
    patterns = _pattern_classes(length)
    if g.m <= exact_max_edges:
        cycles = _labelled_cycles(g, length)
        pats = all_acyclic_orientations(length)
        pat_codes = np.array([int("".join(map(str, p.bits)), 2) for p in pats], dtype=np.int64)
        if not cycles:
            return OrientationEstimate(0, OrientedGraph.orient(g, [True] * g.m), pats[0], "exact", 2**g.m)
        eidx = np.array([[g.edge_index(c[i], c[(i + 1) % length]) for i in range(length)] for c in cycles])
        forward = np.array([[c[i] < c[(i + 1) % length] for i in range(length)] for c in cycles])
        weights = 1 << np.arange(length - 1, -1, -1)
        best = None
        total = 1 << g.m
        step = max(1, 2**20 // max(len(cycles), 1))
        for lo in range(0, total, step):
            masks = np.arange(lo, min(total, lo + step), dtype=np.int64)
            towards = ((masks[:, None] >> np.arange(g.m)) & 1).astype(bool)  # edge points to larger id
            bits = towards[:, eidx] == forward[None, :, :]
            codes = (bits.astype(np.int64) * weights).sum(axis=2)
            counts = np.zeros((len(masks), 1 << length), dtype=np.int64)
            rows = np.repeat(np.arange(len(masks)), codes.shape[1])
            np.add.at(counts, (rows, codes.ravel()), 1)
            worst = counts[:, pat_codes]
            j = np.argmin(worst.min(axis=1))
            val = int(worst[j].min())
            if best is None or val < best[0]:
                pj = int(np.argmin(worst[j]))
                best = (val, int(masks[j]), pats[pj])
        val, mask, pat = best
        orient = OrientedGraph.orient(g, [bool(mask >> i & 1) for i in range(g.m)])
        return OrientationEstimate(val, orient, pat, "exact", total)

    rng = np.random.Generator(np.random.PCG64(seed))
    best = None
    evaluated = 0
    for _ in range(restarts):
        towards = rng.random(g.m) < 0.5
        d = OrientedGraph.orient(g, towards)
        cur, pat = _worst_pattern(d, patterns)
        evaluated += 1
        for e in rng.permutation(g.m)[:max_flips]:
            towards[e] = not towards[e]
            d2 = OrientedGraph.orient(g, towards)
            c2, p2 = _worst_pattern(d2, patterns)
            evaluated += 1
            if c2 < cur:
                cur, pat, d = c2, p2, d2
            else:
                towards[e] = not towards[e]
        if best is None or cur < best[0]:
            best = (cur, d, pat)
    return OrientationEstimate(best[0], best[1], best[2], "heuristic-upper-bound", evaluated)


# -- tournaments ----------------------------------------------------------------

@dataclass(frozen=True)
class Tournament:
    """``beats[i][j]`` is True iff the arc i -> j is present."""

    n: int
    beats: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        for i in range(self.n):
            if self.beats[i][i]:
                raise ValueError("loop in tournament")
            for j in range(i + 1, self.n):
                if self.beats[i][j] == self.beats[j][i]:
                    raise ValueError(f"pair {i},{j} must carry exactly one arc")

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Tournament":
        m = [[False] * n for _ in range(n)]
        for a, b in arcs:
            m[a][b] = True
        return cls(n, tuple(tuple(r) for r in m))

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "Tournament":
        """Pair number t (lexicographic i<j) points i -> j iff bit t is set."""
        arcs = []
        for t, (i, j) in enumerate((i, j) for i in range(n) for j in range(i + 1, n)):
            arcs.append((i, j) if bits >> t & 1 else (j, i))
        return cls.from_arcs(n, arcs)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Tournament":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        flips = rng.random(len(pairs)) < 0.5
        return cls.from_arcs(n, [(i, j) if f else (j, i) for (i, j), f in zip(pairs, flips)])

    @classmethod
    def transitive(cls, n: int) -> "Tournament":
        return cls.from_arcs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.beats[i][j]]

    def oriented(self) -> OrientedGraph:
        return OrientedGraph(self.n, self.arcs())


def is_transitive_sequence(t: Tournament, seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq) and all(t.beats[seq[i]][seq[j]] for i in range(len(seq)) for j in range(i + 1, len(seq)))


def _pigeonhole(t: Tournament, cand: list[int], ell: int) -> list[int] | None:
    if ell == 0:
        return []
    if not cand:
        return None
    v = cand[0]
    out = [w for w in cand[1:] if t.beats[v][w]]
    inn = [w for w in cand[1:] if t.beats[w][v]]
    if len(out) >= len(inn):
        rest = _pigeonhole(t, out, ell - 1)
        return None if rest is None else [v] + rest
    rest = _pigeonhole(t, inn, ell - 1)
    return None if rest is None else rest + [v]


def _exact_transitive(t: Tournament, ell: int) -> list[int] | None:
    def rec(seq: list[int], cand: list[int]) -> list[int] | None:
        if len(seq) == ell:
            return seq
        for w in cand:
            res = rec(seq + [w], [x for x in cand if t.beats[w][x]])
            if res is not None:
                return res
        return None

    return rec([], list(range(t.n)))


def find_transitive_subtournament(t: Tournament, ell: int) -> tuple[int, ...] | None:
    """v_1..v_ell with every arc v_i -> v_j for i < j, or None.

    Pick the first remaining vertex, keep the larger of its out- and
    in-neighbourhoods and recurse; this always succeeds once n >= 2^(ell-1).
    Below that guarantee an exact search decides.
    """
    if ell <= 0:
        return ()
    seq = _pigeonhole(t, list(range(t.n)), ell)
    if seq is None:
        seq = _exact_transitive(t, ell)
    if seq is None:
        return None
    assert is_transitive_sequence(t, seq)
    return tuple(seq)


def _topological(pattern: AcyclicCycleOrientation) -> list[int]:
    L = pattern.length
    indeg = [0] * L
    out: list[list[int]] = [[] for _ in range(L)]
    for a, b in pattern.arcs():
        out[a].append(b)
        indeg[b] += 1
    ready = sorted(v for v in range(L) if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != L:
        raise ValueError("pattern is not acyclic")
    return order


def embed_acyclic_cycle_in_transitive(pattern: AcyclicCycleOrientation, tk: Sequence[int]) -> tuple[int, ...]:
    """Map the pattern's topological order onto the transitive order ``tk``."""
    if not isinstance(pattern, AcyclicCycleOrientation):
        pattern = AcyclicCycleOrientation(tuple(pattern))
    if len(tk) != pattern.length:
        raise ValueError("need exactly one transitive vertex per pattern vertex")
    order = _topological(pattern)
    emb = [0] * pattern.length
    for pos, v in enumerate(order):
        emb[v] = tk[pos]
    return tuple(emb)


def validate_embedding(pattern: AcyclicCycleOrientation, emb: Sequence[int], t: Tournament) -> bool:
    return len(set(emb)) == len(emb) and all(t.beats[emb[a]][emb[b]] for a, b in pattern.arcs())
