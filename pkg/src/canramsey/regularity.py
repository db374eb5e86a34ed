"""Scaled pair densities, (delta, p)-regular pairs, upper uniformity,
equitable partitions, reduced digraphs and transversal cycle counts.

Densities are exact rationals; p given as a float is read through its
decimal representation (0.3 -> 3/10).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .graph import Graph, OrientedGraph

EXACT_SIDE_CAP = 20
Pair = tuple[tuple[int, ...], tuple[int, ...]]


def as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, int):
        return Fraction(p)
    return Fraction(str(p))


def _biadjacency(g: Graph | OrientedGraph, A: Sequence[int], B: Sequence[int]) -> np.ndarray:
    """M[i, j] = 1 when A[i]B[j] is an edge (or the arc A[i] -> B[j])."""
    M = np.zeros((len(A), len(B)), dtype=np.int64)
    pos = {b: j for j, b in enumerate(B)}
    for i, a in enumerate(A):
        nb = g.out_neighbours(a) if isinstance(g, OrientedGraph) else g.adj(a)
        for b in nb:
            j = pos.get(b)
            if j is not None:
                M[i, j] = 1
    return M


def _check_pair(A: Sequence[int], B: Sequence[int]) -> None:
    if not A or not B:
        raise ValueError("both sides must be non-empty")
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")


def p_density(g: Graph | OrientedGraph, A: Sequence[int], B: Sequence[int], p) -> Fraction:
    """e(A, B) / (p |A| |B|); arcs from A to B for oriented input."""
    _check_pair(A, B)
    e = int(_biadjacency(g, list(A), list(B)).sum())
    return Fraction(e, len(A) * len(B)) / as_fraction(p)


# -- regular pairs ---------------------------------------------------------------

@dataclass
class RegularityResult:
    verdict: str  # "regular" | "irregular" | "sampled-no-refutation"
    certified: bool
    density: Fraction
    witness: Pair | None
    deviation: Fraction  # largest deviation found
    mode: str  # "exact" | "sampled"
    checked: int

    @property
    def regular(self) -> bool:
        return self.verdict != "irregular"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certified": self.certified,
            "density": str(self.density),
            "witness": [list(self.witness[0]), list(self.witness[1])] if self.witness else None,
            "deviation": str(self.deviation),
            "mode": self.mode,
            "checked": self.checked,
        }


def _best_for_rows(rows: np.ndarray, xs: np.ndarray, M_total: int, a: int, b: int, ymin: int):
    """For each row (neighbour counts into X per B-vertex) and each |Y| = t,
    the extreme e(X, Y) comes from the t largest or t smallest counts.
    Returns both deviation tables scaled by p |A| |B|; sizes below the
    minimum are marked -1."""
    srt_desc = -np.sort(-rows, axis=1)
    top = np.cumsum(srt_desc, axis=1)  # top[:, t-1] = max e(X, Y), |Y| = t
    bot = np.cumsum(np.sort(rows, axis=1), axis=1)
    t = np.arange(1, rows.shape[1] + 1)
    xy = xs[:, None] * t[None, :]
    # deviation * p * a * b = |e a b - E x y| / (x y)
    up = np.abs(top * a * b - M_total * xy) / xy
    dn = np.abs(bot * a * b - M_total * xy) / xy
    up[:, : ymin - 1] = -1
    dn[:, : ymin - 1] = -1
    return up, dn


def _deviation(M: np.ndarray, X: Sequence[int], Y: Sequence[int], p: Fraction) -> Fraction:
    a, b = M.shape
    dAB = Fraction(int(M.sum()), a * b)
    dXY = Fraction(int(M[np.ix_(list(X), list(Y))].sum()), len(X) * len(Y))
    return abs(dXY - dAB) / p


def _choose_Y(row: np.ndarray, t: int, upward: bool) -> list[int]:
    # stable ordering so ties resolve to smaller positions
    order = np.argsort(-row if upward else row, kind="stable")
    return sorted(int(j) for j in order[:t])


def pair_regularity(
    g: Graph | OrientedGraph,
    A: Sequence[int],
    B: Sequence[int],
    delta: float,
    p,
    mode: str = "auto",
    budget: int = 2**21,
    samples: int = 2000,
    seed: int = 0,
) -> RegularityResult:
    """Is |d(X, Y) - d(A, B)| <= delta for all X in A, Y in B with
    |X| >= delta |A| and |Y| >= delta |B|?

    Exact mode enumerates every X on the smaller side; for fixed X and |Y|
    the extreme e(X, Y) is attained by the |Y| largest or smallest
    neighbour counts, so this covers every qualifying pair.  Among pairs of
    maximal deviation the witness is the one with most vertices.  Sampled
    mode can only refute.
    """
    _check_pair(A, B)
    if mode not in ("auto", "exact", "sampled"):
        raise ValueError("mode must be auto, exact or sampled")
    A, B = list(A), list(B)
    pf = as_fraction(p)
    M = _biadjacency(g, A, B)
    swap = len(A) > len(B)
    N = M.T if swap else M  # enumerate subsets of N's rows
    a, b = N.shape
    xmin = max(1, int(np.ceil(delta * a - 1e-12)))
    ymin = max(1, int(np.ceil(delta * b - 1e-12)))
    E = int(M.sum())
    density = Fraction(E, a * b) / pf
    exact = mode == "exact" or (mode == "auto" and a <= EXACT_SIDE_CAP and 2**a <= budget)
    if mode == "exact" and a > EXACT_SIDE_CAP:
        raise ValueError(f"exact mode needs a side of at most {EXACT_SIDE_CAP} vertices")

    best_key = None
    best_pair = None
    checked = 0

    def consider(masks: np.ndarray, Xrows: np.ndarray) -> None:
        nonlocal best_key, best_pair, checked
        xs = Xrows.sum(axis=1)
        rows = Xrows.astype(np.int64) @ N
        up, dn = _best_for_rows(rows, xs, E, a, b, ymin)
        checked += len(masks) * b
        for arr, upward in ((up, True), (dn, False)):
            flat = arr.max()
            if flat < 0:
                continue
            if best_key is not None and flat < float(best_key[0] * pf * a * b) - 1e-9:
                continue
            cand = np.argwhere(arr >= flat - 1e-9)
            sizes = xs[cand[:, 0]] + cand[:, 1] + 1
            cand = cand[sizes == sizes.max()]
            for r, t in cand[:64]:
                X = [int(i) for i in np.nonzero(Xrows[r])[0]]
                Y = _choose_Y(rows[r], int(t) + 1, upward)
                dev = _deviation(N, X, Y, pf)
                key = (dev, len(X) + len(Y), [-x for x in X], [-y for y in Y])
                if best_key is None or key > best_key:
                    best_key, best_pair = key, (X, Y)

    if exact:
        bits = np.arange(a)
        step = 1 << 14
        for lo in range(0, 1 << a, step):
            masks = np.arange(lo, min(1 << a, lo + step), dtype=np.int64)
            Xrows = ((masks[:, None] >> bits) & 1).astype(np.int8)
            keep = Xrows.sum(axis=1) >= xmin
            if keep.any():
                consider(masks[keep], Xrows[keep])
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        Xrows = np.zeros((samples, a), dtype=np.int8)
        sizes = rng.integers(xmin, a + 1, size=samples)
        for s, size in enumerate(sizes):
            Xrows[s, rng.choice(a, size=int(size), replace=False)] = 1
        consider(np.arange(samples), Xrows)
        # alternate: best Y for X, then best X for that Y
        if best_pair is not None:
            for _ in range(10):
                X, Y = best_pair
                colsum = N[:, Y].sum(axis=1)
                dXY = Fraction(int(N[np.ix_(X, Y)].sum()), len(X) * len(Y))
                upward = dXY >= Fraction(E, a * b)
                new_X = _choose_Y(colsum, len(X), upward)
                row = np.zeros((1, a), dtype=np.int8)
                row[0, new_X] = 1
                before = best_key
                consider(np.array([0]), row)
                if best_key == before:
                    break
    dev = best_key[0] if best_key else Fraction(0)
    X, Y = best_pair if best_pair else ([], [])
    Xv = [B[i] for i in X] if swap else [A[i] for i in X]
    Yv = [A[j] for j in Y] if swap else [B[j] for j in Y]
    witness = (tuple(Yv), tuple(Xv)) if swap else (tuple(Xv), tuple(Yv))
    if dev > delta:
        return RegularityResult("irregular", True, density, witness, dev, "exact" if exact else "sampled", checked)
    verdict = "regular" if exact else "sampled-no-refutation"
    return RegularityResult(verdict, exact, density, None, dev, "exact" if exact else "sampled", checked)


def witness_deviation(g: Graph | OrientedGraph, A, B, witness: Pair, p) -> Fraction:
    """Recompute |d(X, Y) - d(A, B)| from scratch."""
    X, Y = witness
    return abs(p_density(g, X, Y, p) - p_density(g, A, B, p))


# -- upper uniformity ---------------------------------------------------------------

@dataclass
class UniformityResult:
    verdict: str  # "pass" | "witness" | "sampled-no-refutation"
    mode: str
    witness: Pair | None
    edges: int  # e(X, Y) of the witness or of the worst pair seen
    bound: float  # D p |X| |Y| for that pair
    checked: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "witness": [list(self.witness[0]), list(self.witness[1])] if self.witness else None,
            "edges": self.edges,
            "bound": self.bound,
            "checked": self.checked,
        }


def upper_uniformity_check(
    g: Graph, xi: float, D: float, p: float, budget: int = 2**16, seed: int = 0, exact_max_n: int = 16
) -> UniformityResult:
    """Does e(X, Y) <= D p |X| |Y| hold for all disjoint X, Y of size >= xi n?

    For fixed X and |Y| the densest Y is the |Y| outside vertices with most
    neighbours in X; the pair maximising e / (D p |X| |Y|) is kept.  Exact
    mode enumerates X, sampled mode alternates this greedy step from random
    and high-degree starts.
    """
    n = g.n
    smin = max(1, int(np.ceil(xi * n - 1e-12)))
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1
    best = None  # (ratio e / (D p |X||Y|), X, Y, e)
    checked = 0

    def best_Y(X: list[int]):
        inX = np.zeros(n, dtype=bool)
        inX[X] = True
        cnt = A[X].sum(axis=0)
        outside = np.nonzero(~inX)[0]
        order = outside[np.argsort(-cnt[outside], kind="stable")]
        cum = np.cumsum(cnt[order])
        out = None
        for t in range(smin, len(order) + 1):
            e = int(cum[t - 1])
            ratio = e / (D * p * len(X) * t)
            if out is None or ratio > out[0]:
                out = (ratio, sorted(int(y) for y in order[:t]), e)
        return out

    def consider(X: list[int]):
        nonlocal best, checked
        checked += 1
        r = best_Y(X)
        if r is None:
            return None
        if best is None or r[0] > best[0]:
            best = (r[0], sorted(X), r[1], r[2])
        return r

    exact = n <= exact_max_n
    if exact:
        for s in range(smin, n - smin + 1):
            for X in combinations(range(n), s):
                consider(list(X))
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        starts = [sorted(np.argsort(-A.sum(axis=1), kind="stable")[:smin].tolist())]
        starts += [sorted(rng.choice(n, size=smin, replace=False).tolist()) for _ in range(min(budget, 64))]
        for X in starts:
            r = consider(X)
            for _ in range(10):
                if r is None:
                    break
                Y = r[1]
                # swap roles: best X against the current Y
                r2 = best_Y(Y)
                if r2 is None:
                    break
                r = consider(r2[1])
    if best is None:
        return UniformityResult("pass", "exact" if exact else "sampled", None, 0, 0.0, checked)
    ratio, X, Y, e = best
    bound = D * p * len(X) * len(Y)
    if e > bound:
        return UniformityResult("witness", "exact" if exact else "sampled", (tuple(X), tuple(Y)), e, bound, checked)
    verdict = "pass" if exact else "sampled-no-refutation"
    return UniformityResult(verdict, "exact" if exact else "sampled", None, e, bound, checked)


# -- partitions and reduced digraphs --------------------------------------------------------

@dataclass(frozen=True)
class EquitablePartition:
    """``classes[0]`` is the exceptional class V_0; the rest share one size."""

    n: int
    classes: tuple[tuple[int, ...], ...]
    delta: float

    def __post_init__(self):
        seen: set[int] = set()
        for c in self.classes:
            if seen & set(c):
                raise ValueError("classes overlap")
            seen |= set(c)
        if seen != set(range(self.n)):
            raise ValueError("classes must cover 0..n-1")
        if len(self.classes[0]) > self.delta * self.n:
            raise ValueError("exceptional class larger than delta n")
        if len({len(c) for c in self.classes[1:]}) > 1:
            raise ValueError("non-exceptional classes must have equal size")

    @property
    def k(self) -> int:
        return len(self.classes) - 1

    @classmethod
    def random(cls, n: int, k: int, delta: float, seed: int = 0) -> "EquitablePartition":
        rng = np.random.Generator(np.random.PCG64(seed))
        perm = rng.permutation(n).tolist()
        size = n // k
        parts = [tuple(sorted(perm[i * size : (i + 1) * size])) for i in range(k)]
        return cls(n, (tuple(sorted(perm[k * size :])), *parts), delta)

    @classmethod
    def from_json(cls, n: int, data: list[list[int]], delta: float) -> "EquitablePartition":
        return cls(n, tuple(tuple(sorted(c)) for c in data), delta)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.classes]


@dataclass
class ReducedDigraph:
    k: int
    arcs: dict[tuple[int, int], Fraction]  # (i, j) -> d(V_i, V_j), classes numbered from 1
    certified: dict[tuple[int, int], bool]
    theta: float
    delta: float
    p: float

    def to_dot(self, name: str = "R") -> str:
        lines = [f"digraph {name} {{"]
        for i in range(1, self.k + 1):
            lines.append(f"  {i};")
        for (i, j), dens in sorted(self.arcs.items()):
            lines.append(f'  {i} -> {j} [label="{float(dens):.4f}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "arcs": [[i, j, str(d), self.certified[(i, j)]] for (i, j), d in sorted(self.arcs.items())],
            "theta": self.theta,
            "delta": self.delta,
            "p": self.p,
        }


def reduced_digraph(
    d: OrientedGraph, part: EquitablePartition, theta: float, delta: float, p, **regularity
) -> ReducedDigraph:
    """Arc i -> j when (V_i, V_j) is not refuted as (delta, p)-regular, its
    directed p-density is at least theta, and at least one arc runs from V_i
    to V_j.  ``certified`` records whether regularity was proven exactly."""
    arcs: dict[tuple[int, int], Fraction] = {}
    cert: dict[tuple[int, int], bool] = {}
    th = as_fraction(theta)
    for i in range(1, part.k + 1):
        for j in range(1, part.k + 1):
            if i == j:
                continue
            A, B = part.classes[i], part.classes[j]
            dens = p_density(d, A, B, p)
            if dens == 0 or dens < th:
                continue
            res = pair_regularity(d, A, B, delta, p, **regularity)
            if res.regular:
                arcs[(i, j)] = dens
                cert[(i, j)] = res.certified
    return ReducedDigraph(part.k, arcs, cert, theta, delta, float(as_fraction(p)))


# -- regular systems ----------------------------------------------------------------

@dataclass
class RegularSystem:
    """Classes U_0..U_{l-1} of one size; edges of ``graph`` between
    cyclically consecutive classes form the system."""

    graph: Graph
    classes: tuple[tuple[int, ...], ...]
    theta: float = 0.0
    delta: float = 1.0
    p: float = 1.0

    def __post_init__(self):
        if len(self.classes) < 3:
            raise ValueError("a regular system needs at least 3 classes")
        if len({len(c) for c in self.classes}) != 1:
            raise ValueError("classes must have equal size")
        seen: set[int] = set()
        for c in self.classes:
            if seen & set(c):
                raise ValueError("classes overlap")
            seen |= set(c)

    @property
    def length(self) -> int:
        return len(self.classes)

    @property
    def u(self) -> int:
        return len(self.classes[0])

    def biadjacency(self, i: int) -> np.ndarray:
        """Edges between U_i and U_{i+1 mod l}."""
        return _biadjacency(self.graph, self.classes[i], self.classes[(i + 1) % self.length])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.length):
            nxt = set(self.classes[(i + 1) % self.length])
            for a in self.classes[i]:
                out.extend(tuple(sorted((a, b))) for b in self.graph.adj(a) & nxt)
        return sorted(set(out))


@dataclass
class TransversalCount:
    count: int
    bound: float | None
    steps: int

    @property
    def ratio(self) -> float | None:
        if self.bound is None or self.bound == 0:
            return None
        return self.count / self.bound

    def to_dict(self) -> dict:
        return {"count": self.count, "bound": self.bound, "ratio": self.ratio, "steps": self.steps}


def transversal_cycle_count(
    J: RegularSystem, zeta: float | None = None, mu: float | None = None, n: int | None = None, cap: int = 10**8
) -> TransversalCount:
    """Cycles with one vertex per class and consecutive-class edges, by DFS
    from every vertex of U_0; optionally compared to zeta (mu p n)^l."""
    L = J.length
    nbrs = []
    for i in range(L):
        nxt = set(J.classes[(i + 1) % L])
        nbrs.append({a: sorted(J.graph.adj(a) & nxt) for a in J.classes[i]})
    last = L - 1
    count = 0
    steps = 0
    for v0 in J.classes[0]:
        closing = set(J.graph.adj(v0) & set(J.classes[last]))
        stack = [(v0, 0)]
        while stack:
            v, i = stack.pop()
            steps += 1
            if steps > cap:
                raise ValueError(f"enumeration cap of {cap} steps exceeded")
            if i == last:
                count += v in closing
                continue
            for w in nbrs[i][v]:
                stack.append((w, i + 1))
    bound = None
    if zeta is not None and mu is not None:
        bound = zeta * (mu * J.p * (n if n is not None else J.graph.n)) ** L
    return TransversalCount(count, bound, steps)
