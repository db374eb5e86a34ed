"""Graph, coloured-graph and oriented-graph types, seeded G(n,p) sampling,
basic edge counting and the random-graph property verifier.

All graph types are immutable after construction.  Vertices are the
integers ``0..n-1``; undirected edges are stored as sorted pairs ``(u, v)``
with ``u < v`` in lexicographic order.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_adj", "_index", "_csr")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside vertex range 0..{n - 1}")
            key = _norm(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge {key[0]}-{key[1]}")
            seen.add(key)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)
        self._index: dict[Edge, int] | None = None
        self._csr: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def adj(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[v]))

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self._adj], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_index(self, u: int, v: int) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.edges)}
        return self._index[_norm(u, v)]

    def degree_into(self, v: int, vertices: Iterable[int]) -> int:
        a = self._adj[v]
        return sum(1 for w in vertices if w in a)

    def csr(self, order: str = "id") -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (int64 arrays).

        ``order="id"`` sorts each row by neighbour id; ``order="degree"``
        sorts by (degree, id), which prunes path searches earlier in sparse
        random graphs without changing any count.
        """
        if order not in self._csr:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            rows = []
            deg = [len(a) for a in self._adj]
            for v in range(self.n):
                if order == "degree":
                    row = sorted(self._adj[v], key=lambda w: (deg[w], w))
                elif order == "id":
                    row = sorted(self._adj[v])
                else:
                    raise ValueError(f"unknown neighbour order {order!r}")
                rows.append(row)
                indptr[v + 1] = indptr[v] + len(row)
            indices = np.fromiter((w for row in rows for w in row), dtype=np.int64, count=int(indptr[-1]))
            self._csr[order] = (indptr, indices)
        return self._csr[order]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; returns it with the old ids."""
        vs = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vs), edges), vs

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> "Graph":
        es = [_norm(int(e[0]), int(e[1])) for e in edges]
        for u, v in es:
            if not self.has_edge(u, v):
                raise ValueError(f"{u}-{v} is not an edge of the host graph")
        return Graph(self.n, es)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n <= other.n and all(other.has_edge(u, v) for u, v in self.edges)

    def digest(self) -> str:
        """SHA-256 of the canonical edge list; used for golden determinism tests."""
        h = hashlib.sha256(f"n={self.n}\n".encode())
        for u, v in self.edges:
            h.update(f"{u} {v}\n".encode())
        return h.hexdigest()


class ColouredGraph:
    """A graph together with an edge colouring by dense ids ``0..c-1``.

    ``colours[i]`` is the colour of ``graph.edges[i]``.
    """

    __slots__ = ("graph", "colours", "_lookup")

    def __init__(self, graph: Graph, colours: Sequence[int]):
        cols = tuple(int(c) for c in colours)
        if len(cols) != graph.m:
            raise ValueError(f"expected {graph.m} colours, got {len(cols)}")
        if cols:
            present = set(cols)
            if min(present) < 0 or present != set(range(max(present) + 1)):
                raise ValueError("colour ids must form the contiguous range 0..c-1")
        self.graph = graph
        self.colours = cols
        self._lookup: dict[Edge, int] | None = None

    @classmethod
    def from_colours(cls, graph: Graph, colours: Sequence[int]) -> "ColouredGraph":
        """Relabel arbitrary non-negative colour values monotonically to dense ids."""
        values = sorted(set(int(c) for c in colours))
        rank = {c: i for i, c in enumerate(values)}
        return cls(graph, [rank[int(c)] for c in colours])

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: dict[Edge, int]) -> "ColouredGraph":
        return cls.from_colours(graph, [mapping[e] if e in mapping else mapping[(e[1], e[0])] for e in graph.edges])

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def n_colours(self) -> int:
        return (max(self.colours) + 1) if self.colours else 0

    def colour(self, u: int, v: int) -> int:
        if self._lookup is None:
            self._lookup = dict(zip(self.graph.edges, self.colours))
        return self._lookup[_norm(u, v)]

    def colour_map(self) -> dict[Edge, int]:
        if self._lookup is None:
            self._lookup = dict(zip(self.graph.edges, self.colours))
        return self._lookup

    def csr_colours(self, order: str = "id") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR adjacency plus the colour of every CSR entry."""
        indptr, indices = self.graph.csr(order)
        lookup = self.colour_map()
        ecol = np.empty(len(indices), dtype=np.int64)
        for v in range(self.n):
            for j in range(indptr[v], indptr[v + 1]):
                ecol[j] = lookup[_norm(v, int(indices[j]))]
        return indptr, indices, ecol

    def restrict(self, edges: Iterable[Edge]) -> "ColouredGraph":
        """Coloured subgraph on the given edges (colours re-densified)."""
        sub = self.graph.edge_subgraph(edges)
        return ColouredGraph.from_colours(sub, [self.colour(u, v) for u, v in sub.edges])

    def colour_classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e, c in zip(self.graph.edges, self.colours):
            out.setdefault(c, []).append(e)
        return out

    def __repr__(self) -> str:
        return f"ColouredGraph(n={self.n}, m={self.graph.m}, colours={self.n_colours})"


class OrientedGraph:
    """Oriented graph: at most one arc per unordered pair."""

    __slots__ = ("n", "arcs", "_out", "_in", "_csr")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        pairs: set[Edge] = set()
        arc_list: list[Edge] = []
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {u}->{v} outside vertex range")
            key = _norm(u, v)
            if key in pairs:
                raise ValueError(f"pair {key[0]}-{key[1]} carries more than one arc")
            pairs.add(key)
            arc_list.append((u, v))
        self.n = n
        self.arcs: tuple[Edge, ...] = tuple(sorted(arc_list))
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.arcs:
            out[u].add(v)
            inn[v].add(u)
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)
        self._csr = None

    @classmethod
    def orient(cls, graph: Graph, towards_larger: Sequence[bool]) -> "OrientedGraph":
        """Orient ``graph.edges[i]`` as ``u->v`` (u<v) when ``towards_larger[i]``."""
        return cls(graph.n, [(u, v) if f else (v, u) for (u, v), f in zip(graph.edges, towards_larger)])

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._out[u]

    def out_neighbours(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbours(self, v: int) -> frozenset[int]:
        return self._in[v]

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs)

    def arcs_between(self, A: Iterable[int], B: Iterable[int]) -> int:
        """Number of arcs from A into B (the directed e(A, B))."""
        bset = set(B)
        return sum(len(self._out[a] & bset) if len(bset) > 0 else 0 for a in A)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        if self._csr is None:
            def build(sets):
                indptr = np.zeros(self.n + 1, dtype=np.int64)
                flat: list[int] = []
                for v in range(self.n):
                    row = sorted(sets[v])
                    flat.extend(row)
                    indptr[v + 1] = len(flat)
                return indptr, np.array(flat, dtype=np.int64)

            self._csr = (*build(self._out), *build(self._in))
        return self._csr

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, arcs={len(self.arcs)})"


# -- standard graphs ---------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def parse_target(name: str) -> Graph:
    """Parse small named graphs: ``c4``, ``k4``, ``p5``, ``k2,4``."""
    s = name.strip().lower().replace("_", "").replace("{", "").replace("}", "")
    if s.startswith("k") and "," in s:
        a, b = s[1:].split(",")
        return complete_bipartite(int(a), int(b))
    kind, num = s[0], int(s[1:])
    if kind == "c":
        return cycle_graph(num)
    if kind == "k":
        return complete_graph(num)
    if kind == "p":
        return path_graph(num)
    raise ValueError(f"unknown target graph {name!r}")


# -- sampling -----------------------------------------------------------

@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def sample_gnp(spec: GnpSpec) -> Graph:
    """Sample G(n, p).

    Pairs are visited in lexicographic order with exactly one uniform draw
    from a PCG64 stream seeded by ``spec.seed`` per pair; the pair is an edge
    iff its draw is below ``p``.
    """
    n, p = spec.n, spec.p
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    edges: list[Edge] = []
    for u in range(n - 1):
        draws = rng.random(n - u - 1)
        hits = np.nonzero(draws < p)[0]
        edges.extend((u, u + 1 + int(j)) for j in hits)
    return Graph(n, edges)


# -- counting -----------------------------------------------------------

def edge_counts(g: Graph, U: Iterable[int], W: Iterable[int] | None = None) -> int:
    """e_G(U) when W is None, else e_G(U, W) for disjoint U, W."""
    uset = set(U)
    if W is None:
        return sum(len(g.adj(u) & uset) for u in uset) // 2
    wset = set(W)
    overlap = uset & wset
    if overlap:
        raise ValueError(f"U and W overlap in {sorted(overlap)[:5]}")
    return sum(len(g.adj(u) & wset) for u in uset)


# -- random-graph property verifier ----------------------------------------

@dataclass
class PropertyCheck:
    name: str
    passed: bool
    mode: str  # "exact" | "sampled" | "vacuous"
    checked: int
    threshold: float | None = None
    witness: dict | None = None


@dataclass
class RgPropertyReport:
    epsilon: float
    p: float
    properties: dict[str, PropertyCheck] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.properties.values())

    def failures(self) -> list[PropertyCheck]:
        return [c for c in self.properties.values() if not c.passed]

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "p": self.p,
            "passed": self.passed,
            "properties": {
                k: {"passed": c.passed, "mode": c.mode, "checked": c.checked, "threshold": c.threshold, "witness": c.witness}
                for k, c in self.properties.items()
            },
        }


def _lcomb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


class _DegreeScanner:
    """Vectorised d_G(v, U) for all v at once."""

    def __init__(self, g: Graph):
        indptr, indices = g.csr()
        self.n = g.n
        self.indices = indices
        self.rows = np.repeat(np.arange(g.n), np.diff(indptr))

    def degrees_into(self, U: Sequence[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=np.float64)
        mask[list(U)] = 1.0
        return np.bincount(self.rows, weights=mask[self.indices], minlength=self.n).astype(np.int64)


def _sample_size(rng: np.random.Generator, n: int, sizes: range) -> int:
    logw = np.array([_lcomb(n, s) for s in sizes])
    w = np.exp(logw - logw.max())
    return int(sizes[rng.choice(len(w), p=w / w.sum())])


def verify_rg_properties(
    g: Graph, p: float, eps: float, budget: int = 200, seed: int = 0
) -> RgPropertyReport:
    """Check the four typical-G(n,p) properties at finite n.

    (1) e(U) = (1 +- eps) p|U|^2/2 for |U| >= sqrt(12n/(eps^2 p));
    (2) d(v) = (1 +- eps) pn for every v;
    (3) e(U,W) = (1 +- eps) p|U||W| for disjoint U, W with |U||W| >= 6n/(eps^2 p);
    (4) for |U| >= eps n, all but eps^2 n vertices have d(v,U) = (1 +- eps) p|U|.

    (2) is exact.  (1), (3) and (4) are exhaustive when the number of
    qualifying sets is at most ``budget`` and otherwise sample ``budget``
    qualifying sets uniformly.  A size threshold exceeding what ``n``
    allows makes a property vacuous (reported as passing, mode "vacuous").
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    n = g.n
    rng = np.random.Generator(np.random.PCG64(seed))
    report = RgPropertyReport(epsilon=eps, p=p)
    lo, hi = 1 - eps, 1 + eps

    # (2) degrees
    deg = g.degrees()
    bad = np.nonzero((deg < lo * p * n) | (deg > hi * p * n))[0]
    report.properties["degrees"] = PropertyCheck(
        "degrees", len(bad) == 0, "exact", n, p * n,
        None if len(bad) == 0 else {"vertex": int(bad[0]), "degree": int(deg[bad[0]]), "violators": int(len(bad))},
    )

    # (1) edge counts inside large sets
    t1 = math.ceil(math.sqrt(12 * n / (eps * eps * p))) if p > 0 else n + 1
    if t1 > n:
        report.properties["edge_count"] = PropertyCheck("edge_count", True, "vacuous", 0, t1)
    else:
        total = sum(math.comb(n, s) for s in range(t1, n + 1))
        sets: Iterable[Sequence[int]]
        if total <= budget:
            mode = "exact"
            sets = (c for s in range(t1, n + 1) for c in combinations(range(n), s))
        else:
            mode = "sampled"
            sets = (
                sorted(rng.choice(n, size=_sample_size(rng, n, range(t1, n + 1)), replace=False).tolist())
                for _ in range(budget)
            )
        check = PropertyCheck("edge_count", True, mode, 0, t1)
        for U in sets:
            check.checked += 1
            e = edge_counts(g, U)
            target = p * len(U) ** 2 / 2
            if not lo * target <= e <= hi * target:
                check.passed = False
                check.witness = {"U": list(U), "edges": e, "expected": target}
                break
        report.properties["edge_count"] = check

    # (3) edges between disjoint sets
    t3 = 6 * n / (eps * eps * p) if p > 0 else math.inf
    if (n // 2) * (n - n // 2) < t3:
        report.properties["edges_between"] = PropertyCheck("edges_between", True, "vacuous", 0, t3)
    else:
        a_vals, b_vals, logw = [], [], []
        for a in range(1, n):
            bmin = max(1, math.ceil(t3 / a))
            for b in range(bmin, n - a + 1):
                a_vals.append(a)
                b_vals.append(b)
                logw.append(_lcomb(n, a) + _lcomb(n - a, b))
        logw_arr = np.array(logw)
        log_total = logw_arr.max() + math.log(np.exp(logw_arr - logw_arr.max()).sum())
        check = PropertyCheck("edges_between", True, "exact" if log_total <= math.log(max(budget, 1)) else "sampled", 0, t3)
        if check.mode == "exact":
            pairs = (
                (U, W)
                for a, b in zip(a_vals, b_vals)
                for U in combinations(range(n), a)
                for W in combinations([v for v in range(n) if v not in set(U)], b)
            )
        else:
            w = np.exp(logw_arr - logw_arr.max())
            w /= w.sum()

            def draw():
                i = rng.choice(len(w), p=w)
                perm = rng.permutation(n)
                a, b = a_vals[i], b_vals[i]
                return sorted(perm[:a].tolist()), sorted(perm[a:a + b].tolist())

            pairs = (draw() for _ in range(budget))
        for U, W in pairs:
            check.checked += 1
            e = edge_counts(g, U, W)
            target = p * len(U) * len(W)
            if not lo * target <= e <= hi * target:
                check.passed = False
                check.witness = {"U": list(U), "W": list(W), "edges": e, "expected": target}
                break
        report.properties["edges_between"] = check

    # (4) degrees into large sets
    t4 = math.ceil(eps * n)
    allowed = eps * eps * n
    total4 = sum(math.comb(n, s) for s in range(t4, n + 1)) if n <= 60 else math.inf
    scanner = _DegreeScanner(g)
    if total4 <= budget:
        mode = "exact"
        sets4: Iterable[Sequence[int]] = (c for s in range(t4, n + 1) for c in combinations(range(n), s))
    else:
        mode = "sampled"
        sets4 = (
            sorted(rng.choice(n, size=_sample_size(rng, n, range(t4, n + 1)), replace=False).tolist())
            for _ in range(budget)
        )
    check = PropertyCheck("degrees_into_sets", True, mode, 0, allowed)
    for U in sets4:
        check.checked += 1
        d = scanner.degrees_into(U)
        target = p * len(U)
        off = np.nonzero((d < lo * target) | (d > hi * target))[0]
        if len(off) > allowed:
            check.passed = False
            check.witness = {"U": list(U), "violators": [int(v) for v in off[:20]], "count": int(len(off)), "allowed": allowed}
            break
    report.properties["degrees_into_sets"] = check
    return report
