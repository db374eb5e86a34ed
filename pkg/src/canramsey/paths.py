"""Path counts, the rainbow focused graph, local density and the
mono / lexicographic / rainbow-dense trichotomy."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .constants import default_density
from .graph import ColouredGraph, Graph, cycle_graph
from .patterns import CanonicalWitness, find_canonical_copies

MAX_PATH_VERTICES = 12


def _check_length(length: int) -> None:
    if not 3 <= length <= MAX_PATH_VERTICES:
        raise ValueError(f"path length must lie in 3..{MAX_PATH_VERTICES}, got {length}")


@dataclass
class PathCountTable:
    """X^length for every vertex pair (symmetric matrix) and every vertex."""

    length: int
    counts: np.ndarray

    @property
    def per_vertex(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def pair(self, u: int, v: int) -> int:
        return int(self.counts[u, v])

    def total(self) -> int:
        return int(np.triu(self.counts, 1).sum())

    def rows(self):
        """(u, v, count) for u < v with count > 0, sorted."""
        us, vs = np.nonzero(np.triu(self.counts, 1))
        return [(int(u), int(v), int(self.counts[u, v])) for u, v in zip(us, vs)]


def count_paths(g: Graph, length: int) -> PathCountTable:
    _check_length(length)
    indptr, indices = g.csr("degree")
    return PathCountTable(length, kernels.path_pair_counts(indptr, indices, g.n, length))


@dataclass
class RainbowFocusedGraph:
    base: ColouredGraph
    length: int
    gamma: Graph
    witness: dict[tuple[int, int], tuple[int, ...]]

    def validate(self) -> bool:
        """Every stored witness is a rainbow path with the right endpoints."""
        g = self.base.graph
        for (u, v), path in self.witness.items():
            if len(path) != self.length or {path[0], path[-1]} != {u, v} or len(set(path)) != self.length:
                return False
            if not all(g.has_edge(a, b) for a, b in zip(path, path[1:])):
                return False
            cols = [self.base.colour(a, b) for a, b in zip(path, path[1:])]
            if len(set(cols)) != len(cols):
                return False
        return set(self.witness) == set(self.gamma.edges)

    def witness_json(self) -> list[dict]:
        return [{"u": u, "v": v, "path": list(p)} for (u, v), p in sorted(self.witness.items())]


def rainbow_focused(cg: ColouredGraph, length: int) -> RainbowFocusedGraph:
    """Join u, v when some (u, v)-path on ``length`` vertices is rainbow.

    The stored witness is the first rainbow path met by a DFS from the
    smaller endpoint over id-ordered neighbours.
    """
    _check_length(length)
    indptr, indices, ecol = cg.csr_colours("id")
    paths = kernels.rainbow_pairs(indptr, indices, ecol, cg.n_colours, cg.n, length)
    witness = {(p[0], p[-1]): tuple(int(x) for x in p) for p in paths}
    return RainbowFocusedGraph(cg, length, Graph(cg.n, witness.keys()), witness)


# -- local density ------------------------------------------------------------

@dataclass
class DensityReport:
    rho: float
    d: float
    size: int  # the tested subset size ceil(rho n)
    verdict: str  # "dense" | "witness" | "undecided-sampled"
    mode: str  # "exact" | "certified" | "sampled"
    checked: int
    witness: list[int] | None = None
    min_edges: int | None = None  # fewest edges seen in a tested subset
    required: float = 0.0

    @property
    def dense(self) -> bool:
        return self.verdict == "dense"

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "d": self.d,
            "size": self.size,
            "verdict": self.verdict,
            "mode": self.mode,
            "checked": self.checked,
            "witness": self.witness,
            "min_edges": self.min_edges,
            "required": self.required,
        }


def _degree_certificate(g: Graph, s: int) -> int:
    """Lower bound on e(G[S]) over all S with |S| = s.

    Inside S a vertex keeps at least deg(v) - (n - s) neighbours, so
    2 e(S) is at least the sum of the s smallest such values.
    """
    keep = np.maximum(g.degrees() - (g.n - s), 0)
    return int(np.sort(keep)[:s].sum()) // 2 if s else 0


def _edges_in(adj_mask: list[int], S) -> int:
    m = 0
    for v in S:
        m |= 1 << v
    return sum(bin(adj_mask[v] & m).count("1") for v in S) // 2


def _descend(g: Graph, S: list[int], rng: np.random.Generator, rounds: int) -> list[int]:
    """Swap the highest-internal-degree member for the outside vertex with
    fewest neighbours in S while that lowers e(S)."""
    n = g.n
    A_ind = g.csr()
    inS = np.zeros(n, dtype=bool)
    inS[S] = True
    rows = np.repeat(np.arange(n), np.diff(A_ind[0]))
    for _ in range(rounds):
        deg_in = np.bincount(rows, weights=inS[A_ind[1]].astype(np.float64), minlength=n).astype(np.int64)
        inside = np.nonzero(inS)[0]
        outside = np.nonzero(~inS)[0]
        if len(outside) == 0:
            break
        out_v = int(inside[np.argmax(deg_in[inside])])
        # the newcomer loses its edge to out_v if adjacent
        cand = deg_in[outside] - np.array([g.has_edge(int(w), out_v) for w in outside], dtype=np.int64)
        in_v = int(outside[np.argmin(cand)])
        gain = int(deg_in[out_v]) - int(cand.min())
        if gain <= 0:
            break
        inS[out_v] = False
        inS[in_v] = True
    return sorted(int(v) for v in np.nonzero(inS)[0])


def is_locally_dense(
    g: Graph, rho: float, d: float, budget: int = 20000, seed: int = 0, descent_rounds: int = 200
) -> DensityReport:
    """Every S with |S| >= rho n spans at least d C(|S|, 2) edges?

    Only sets of size exactly max(2, ceil(rho n)) are examined; larger sets
    inherit the bound by averaging over their subsets of that size, which
    needs at least one pair per subset.  Exact enumeration when C(n, s) <= budget;
    otherwise a degree certificate may prove density; otherwise ``budget``
    random sets plus greedy descent can only refute.
    """
    if not 0 < rho <= 1 or not 0 < d <= 1:
        raise ValueError("rho and d must lie in (0, 1]")
    n = g.n
    s = min(n, max(2, math.ceil(rho * n - 1e-12)))
    need = d * math.comb(s, 2)
    adj_mask = [sum(1 << w for w in g.adj(v)) for v in range(n)]
    if math.comb(n, s) <= budget:
        best, best_S, checked = None, None, 0
        for S in combinations(range(n), s):
            checked += 1
            e = _edges_in(adj_mask, S)
            if best is None or e < best:
                best, best_S = e, S
                if e < need:
                    break
        verdict = "witness" if best is not None and best < need else "dense"
        return DensityReport(rho, d, s, verdict, "exact", checked, list(best_S) if verdict == "witness" else None, best, need)
    cert = _degree_certificate(g, s)
    if cert >= need:
        return DensityReport(rho, d, s, "dense", "certified", 0, None, cert, need)
    rng = np.random.Generator(np.random.PCG64(seed))
    best, best_S = None, None
    for i in range(budget):
        S = sorted(rng.choice(n, size=s, replace=False).tolist())
        if i < 8:
            S = _descend(g, S, rng, descent_rounds)
        e = _edges_in(adj_mask, S)
        if best is None or e < best:
            best, best_S = e, S
        if e < need:
            return DensityReport(rho, d, s, "witness", "sampled", i + 1, S, e, need)
    return DensityReport(rho, d, s, "undecided-sampled", "sampled", budget, None, best, need)


# -- well-distributed path statistic -----------------------------------------------

@dataclass
class WellDistributedStat:
    length: int
    threshold: float  # 2 n^(l-2) p^(l-1)
    pairs: list[tuple[int, int]]  # F
    mass: int
    bound: float  # xi n^l p^(l-1)

    @property
    def passed(self) -> bool:
        return self.mass <= self.bound

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "threshold": self.threshold,
            "pairs": [list(f) for f in self.pairs],
            "mass": self.mass,
            "bound": self.bound,
            "pass": self.passed,
        }


def well_distributed_stat(g: Graph, length: int, p: float, xi: float, table: PathCountTable | None = None) -> WellDistributedStat:
    table = table if table is not None else count_paths(g, length)
    n = g.n
    threshold = 2 * n ** (length - 2) * p ** (length - 1)
    upper = np.triu(table.counts, 1)
    us, vs = np.nonzero(upper > threshold)
    mass = int(upper[us, vs].sum())
    return WellDistributedStat(
        length, threshold, [(int(u), int(v)) for u, v in zip(us, vs)], mass, xi * n**length * p ** (length - 1)
    )


# -- trichotomy ----------------------------------------------------------------

@dataclass
class TrichotomyResult:
    k: int
    outcomes: set[str]
    mono: CanonicalWitness | None
    lex: list[CanonicalWitness]
    lex_missing: int
    density: DensityReport
    gamma_edges: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "outcomes": sorted(self.outcomes),
            "mono": self.mono.to_dict() if self.mono else None,
            "lex": [w.to_dict() for w in self.lex],
            "lex_missing": self.lex_missing,
            "density": self.density.to_dict(),
            "gamma_edges": self.gamma_edges,
        }


def trichotomy(
    cg: ColouredGraph, k: int, rho: float, d: float | None = None, budget: int = 20000, seed: int = 0
) -> TrichotomyResult:
    """Evaluate the three outcomes independently and report all that hold:
    a monochromatic C_2k, lexicographic C_2k for every ordering, and
    (rho, d)-density of the rainbow focused graph on 2k vertices."""
    if k < 2:
        raise ValueError("k must be at least 2")
    d = default_density(k) if d is None else d
    H = cycle_graph(2 * k)
    mono = find_canonical_copies(cg, H, "mono", limit=1)
    lex = find_canonical_copies(cg, H, "lex-all")
    gamma = rainbow_focused(cg, 2 * k)
    dens = is_locally_dense(gamma.gamma, rho, d, budget=budget, seed=seed)
    outcomes: set[str] = set()
    if mono:
        outcomes.add("mono-C2k")
    if not lex.missing:
        outcomes.add("lex-all-C2k")
    if dens.dense:
        outcomes.add("gamma-dense")
    notes = []
    if dens.verdict == "undecided-sampled":
        notes.append("density not refuted by sampling; not certified")
    return TrichotomyResult(k, outcomes, mono[0] if mono else None, list(lex), len(lex.missing), dens, gamma.gamma.m, notes)
