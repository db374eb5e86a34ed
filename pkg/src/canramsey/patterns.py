"""Canonical colour patterns: monochromatic, rainbow and lexicographic copies.

A copy of H in a coloured graph is lexicographic with respect to an
ordering sigma of V(H) when every edge takes the colour of its sigma-smaller
endpoint (its *source*) and distinct sources carry distinct colours.  Two
colourings of H have the same pattern exactly when they induce the same
edge partition, so all pattern tests below compare partitions; a partition
is encoded per copy as the bitmask of equal-colour edge pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .graph import ColouredGraph, Graph
from .partitions import EdgePartition, cycle_code, dihedral_sequences, iter_rgs_batches, normalize

MAX_PATTERN_VERTICES = 12
MAX_DECIDER_EDGES = 14
MAX_LIST_PRODUCT = 10**8

MONO = "monochromatic"
RAINBOW = "rainbow"
LEX = "lexicographic"


class SearchCapError(ValueError):
    """An exhaustive search would exceed its declared cap."""


@dataclass(frozen=True)
class VertexOrdering:
    """sigma as the list of vertices from sigma-smallest to sigma-largest."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"{self.order} is not a permutation of 0..{len(self.order) - 1}")

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(tuple(range(n)))

    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.order)
        for i, v in enumerate(self.order):
            r[v] = i
        return tuple(r)

    def smaller(self, u: int, v: int) -> int:
        r = self.rank()
        return u if r[u] < r[v] else v


@dataclass(frozen=True)
class LexPattern:
    host: Graph
    partition: EdgePartition
    sources: tuple[int, ...]  # sources[b] = source vertex of block b

    @property
    def blocks(self) -> tuple[int, ...]:
        return self.partition.blocks


def lex_pattern(H: Graph, sigma: VertexOrdering | Sequence[int]) -> LexPattern:
    """Group the edges of H by their sigma-smaller endpoint."""
    if H.m == 0:
        raise ValueError("H must have at least one edge")
    if not isinstance(sigma, VertexOrdering):
        sigma = VertexOrdering(tuple(sigma))
    if len(sigma.order) != H.n:
        raise ValueError("ordering length differs from v(H)")
    rank = sigma.rank()
    src = [u if rank[u] < rank[v] else v for u, v in H.edges]
    blocks = normalize(src)
    sources = tuple(dict.fromkeys(src))
    return LexPattern(H, EdgePartition(H.edges, blocks), sources)


# -- automorphisms and embeddings ----------------------------------------

def iter_embeddings(H: Graph, G: Graph, bijective: bool = False) -> Iterator[tuple[int, ...]]:
    """Injective homomorphisms H -> G in lexicographic order of the image tuple."""
    h = H.n
    if h > G.n:
        return
    earlier = [[u for u in H.adj(v) if u < v] for v in range(h)]
    emb = [0] * h
    used = [False] * G.n
    allv = list(range(G.n))

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == h:
            yield tuple(emb)
            return
        if earlier[i]:
            cands = G.neighbours(emb[earlier[i][0]])
        else:
            cands = allv
        need = [emb[u] for u in earlier[i][1:]]
        deg = H.degree(i)
        for x in cands:
            if used[x] or G.degree(x) < deg:
                continue
            if any(not G.has_edge(x, y) for y in need):
                continue
            emb[i] = x
            used[x] = True
            yield from rec(i + 1)
            used[x] = False

    if bijective and (h != G.n or H.m != G.m):
        return
    yield from rec(0)


def automorphisms(H: Graph) -> list[tuple[int, ...]]:
    return list(iter_embeddings(H, H, bijective=True))


def _edge_perm(H: Graph, pi: Sequence[int]) -> list[int]:
    """perm[i] = index of the image of edge i under the vertex map pi."""
    return [H.edge_index(pi[u], pi[v]) for u, v in H.edges]


def pattern_key(H: Graph, blocks: Sequence[int], auts: list[tuple[int, ...]] | None = None) -> tuple[int, ...]:
    """Canonical representative of a partition of E(H) under Aut(H)."""
    auts = auts if auts is not None else automorphisms(H)
    best = None
    for pi in auts:
        perm = _edge_perm(H, pi)
        moved = [0] * H.m
        for i, j in enumerate(perm):
            moved[j] = blocks[i]
        key = normalize(moved)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class PatternClass:
    """One lexicographic pattern up to Aut(H), with a representative ordering."""

    key: tuple[int, ...]
    sigma: VertexOrdering
    pattern: LexPattern
    orderings: int  # how many orderings of V(H) induce this class


def _topological_order(n: int, arcs: Sequence[tuple[int, int]]) -> tuple[int, ...] | None:
    """Smallest-index-first topological order, or None when there is a cycle."""
    indeg = [0] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    ready = sorted(v for v in range(n) if indeg[v] == 0)
    order: list[int] = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    return tuple(order) if len(order) == n else None


def _linear_extensions(n: int, arcs: Sequence[tuple[int, int]]) -> int:
    pred = [0] * n
    for a, b in arcs:
        pred[b] |= 1 << a
    ways = [0] * (1 << n)
    ways[0] = 1
    for s in range(1 << n):
        if ways[s]:
            for v in range(n):
                if not s >> v & 1 and pred[v] & s == pred[v]:
                    ways[s | 1 << v] += ways[s]
    return ways[-1]


def enumerate_lex_patterns(H: Graph) -> list[PatternClass]:
    """Distinct lexicographic patterns of H up to automorphism.

    An ordering only matters through the acyclic orientation it induces
    (each edge points away from its smaller endpoint), so whichever of the
    v(H)! orderings or the 2^e(H) orientations is fewer gets scanned.  The
    representative ordering of a class is the first met in that scan (for
    orientations: the smallest-index-first topological order).
    """
    if H.m == 0:
        raise ValueError("H must have at least one edge")
    by_orderings = math.factorial(H.n) <= 2**H.m
    if (by_orderings and H.n > 9) or (not by_orderings and H.m > 16):
        raise SearchCapError("H is too large to enumerate its lexicographic patterns")
    auts = automorphisms(H)
    classes: dict[tuple[int, ...], list] = {}

    def add(sigma: VertexOrdering, weight: int) -> None:
        pat = lex_pattern(H, sigma)
        key = pattern_key(H, pat.blocks, auts)
        if key in classes:
            classes[key][2] += weight
        else:
            classes[key] = [sigma, pat, weight]

    if by_orderings:
        for order in permutations(range(H.n)):
            add(VertexOrdering(order), 1)
    else:
        for flips in product((False, True), repeat=H.m):
            arcs = [(v, u) if f else (u, v) for (u, v), f in zip(H.edges, flips)]
            topo = _topological_order(H.n, arcs)
            if topo is not None:
                add(VertexOrdering(topo), _linear_extensions(H.n, arcs))
    return [PatternClass(k, s, p, c) for k, (s, p, c) in sorted(classes.items())]


# -- equal-colour masks ---------------------------------------------------

def _pair_index(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    I, J = np.triu_indices(m, k=1)
    weights = (np.int64(1) << np.arange(len(I), dtype=np.int64)) if len(I) < 63 else None
    if weights is None:
        raise SearchCapError("H has too many edges for equal-colour masks (e(H) <= 11)")
    return I, J, weights


def equality_mask(blocks: Sequence[int]) -> int:
    m = len(blocks)
    I, J, w = _pair_index(m)
    b = np.asarray(blocks)
    return int(((b[I] == b[J]).astype(np.int64) * w).sum())


@dataclass
class PatternTargets:
    """Masks for the monochromatic, rainbow and every lexicographic class of H."""

    H: Graph
    mono: int
    rainbow: int
    lex: list[PatternClass]
    lex_masks: list[int]

    @classmethod
    def of(cls, H: Graph) -> "PatternTargets":
        m = H.m
        lex = enumerate_lex_patterns(H)
        return cls(
            H,
            equality_mask([0] * m),
            equality_mask(list(range(m))),
            lex,
            [equality_mask(c.pattern.blocks) for c in lex],
        )


# -- witnesses ------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalWitness:
    kind: str
    embedding: tuple[int, ...]  # embedding[h] = host vertex of H-vertex h
    sigma: VertexOrdering | None = None

    def colours(self, cg: ColouredGraph, H: Graph) -> list[int]:
        e = self.embedding
        return [cg.colour(e[u], e[v]) for u, v in H.edges]

    def verify(self, cg: ColouredGraph, H: Graph) -> bool:
        e = self.embedding
        if len(set(e)) != H.n or not all(cg.graph.has_edge(e[u], e[v]) for u, v in H.edges):
            return False
        cols = self.colours(cg, H)
        if self.kind == MONO:
            return len(set(cols)) == 1
        if self.kind == RAINBOW:
            return len(set(cols)) == len(cols)
        if self.kind == LEX and self.sigma is not None:
            return normalize(cols) == lex_pattern(H, self.sigma).blocks
        return False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sigma": list(self.sigma.order) if self.sigma else None,
            "embedding": list(self.embedding),
        }


@dataclass
class CopySearchResult:
    witnesses: list[CanonicalWitness]
    missing: list[PatternClass] = field(default_factory=list)

    def __iter__(self):
        return iter(self.witnesses)

    def __len__(self) -> int:
        return len(self.witnesses)

    def __getitem__(self, i):
        return self.witnesses[i]

    def __bool__(self) -> bool:
        return bool(self.witnesses)


@dataclass
class CanonicalProfile:
    """Which canonical kinds occur in one colouring (first witness each)."""

    mono: CanonicalWitness | None
    rainbow: CanonicalWitness | None
    lex: list[CanonicalWitness | None]
    classes: list[PatternClass]

    @property
    def lex_any(self) -> bool:
        return any(w is not None for w in self.lex)

    @property
    def lex_all(self) -> bool:
        return bool(self.lex) and all(w is not None for w in self.lex)

    @property
    def weak(self) -> bool:
        return self.mono is not None or self.rainbow is not None or self.lex_any

    @property
    def strong(self) -> bool:
        # each ordering needs a copy that is monochromatic, rainbow or lex for it
        return self.mono is not None or self.rainbow is not None or self.lex_all

    def witnesses(self) -> list[CanonicalWitness]:
        out = [w for w in (self.mono, self.rainbow) if w is not None]
        return out + [w for w in self.lex if w is not None]

    def flags(self) -> dict[str, bool]:
        return {
            "mono": self.mono is not None,
            "rainbow": self.rainbow is not None,
            "lex_any": self.lex_any,
            "lex_all": self.lex_all,
            "weak": self.weak,
            "strong": self.strong,
        }


# -- copy search ----------------------------------------------------------

def cyclic_order(H: Graph) -> tuple[int, ...] | None:
    """Vertices of H around the cycle from 0 (towards its smaller neighbour),
    or None when H is not a single cycle."""
    if H.n < 3 or H.m != H.n or any(H.degree(v) != 2 for v in range(H.n)):
        return None
    order = [0, min(H.adj(0))]
    while len(order) < H.n:
        a, b = H.adj(order[-1])
        nxt = a if a != order[-2] else b
        if nxt == 0:
            return None
        order.append(nxt)
    return tuple(order) if order[0] in H.adj(order[-1]) else None


class _Matcher:
    """Shared machinery: targets as exact RGS (for labelled matching)."""

    def __init__(self, H: Graph, targets: list[tuple[str, tuple[int, ...], VertexOrdering | None]]):
        self.H = H
        self.targets = targets

    def witness(self, i: int, emb: tuple[int, ...]) -> CanonicalWitness:
        kind, _, sigma = self.targets[i]
        return CanonicalWitness(kind, emb, sigma)


def _copies_generic(cg: ColouredGraph, matcher: _Matcher, limit: int) -> tuple[list[list[tuple[int, ...]]], list[int]]:
    H = matcher.H
    hits: list[list[tuple[int, ...]]] = [[] for _ in matcher.targets]
    seen: list[set] = [set() for _ in matcher.targets]
    counts = [0] * len(matcher.targets)
    goal: dict[tuple[int, ...], list[int]] = {}
    for i, (_, b, _) in enumerate(matcher.targets):
        goal.setdefault(tuple(b), []).append(i)
    open_targets = len(matcher.targets)
    cmap = cg.colour_map()
    for emb in iter_embeddings(H, cg.graph):
        cols = []
        for u, v in H.edges:
            a, b = emb[u], emb[v]
            cols.append(cmap[(a, b) if a < b else (b, a)])
        idx = goal.get(normalize(cols))
        if idx is None:
            continue
        copy = frozenset((min(emb[u], emb[v]), max(emb[u], emb[v])) for u, v in H.edges)
        for i in idx:
            if copy in seen[i]:
                continue
            seen[i].add(copy)
            counts[i] += 1
            if limit <= 0 or counts[i] <= limit:
                hits[i].append(emb)
                if limit > 0 and counts[i] == limit:
                    open_targets -= 1
        if limit > 0 and open_targets == 0:
            break
    return hits, counts


def _copies_cycle(cg: ColouredGraph, matcher: _Matcher, order: tuple[int, ...], limit: int):
    """Cycle targets through the compiled kernel."""
    H = matcher.H
    L = H.n
    cyc_edge = [H.edge_index(order[i], order[(i + 1) % L]) for i in range(L)]
    codes = []
    for _, blocks, _ in matcher.targets:
        codes.append(cycle_code([blocks[j] for j in cyc_edge]))
    indptr, indices, ecol = cg.csr_colours("id")
    raw, counts = kernels.cycle_pattern_search(indptr, indices, ecol, cg.n, L, np.array(codes, dtype=np.int64), limit)
    hits: list[list[tuple[int, ...]]] = [[] for _ in matcher.targets]
    cmap = cg.colour_map()
    for i, seq in raw:
        want = matcher.targets[i][1]
        best = None
        for img in dihedral_sequences(seq):
            emb = [0] * L
            for pos, hv in enumerate(order):
                emb[hv] = img[pos]
            cols = [cmap[(min(emb[u], emb[v]), max(emb[u], emb[v]))] for u, v in H.edges]
            if normalize(cols) == want:
                t = tuple(emb)
                if best is None or t < best:
                    best = t
        assert best is not None, "kernel match without an exact labelling"
        hits[i].append(best)
    return hits, [int(c) for c in counts]


def _search(cg: ColouredGraph, H: Graph, matcher: _Matcher, limit: int):
    if H.n > MAX_PATTERN_VERTICES:
        raise SearchCapError(f"v(H)={H.n} exceeds the enumeration cap {MAX_PATTERN_VERTICES}")
    if H.n > cg.n or H.m > cg.graph.m:
        return [[] for _ in matcher.targets], [0] * len(matcher.targets)
    order = cyclic_order(H)
    if order is not None:
        return _copies_cycle(cg, matcher, order, limit)
    return _copies_generic(cg, matcher, limit)


def _targets(H: Graph, classes: list[PatternClass] | None, mono=True, rainbow=True, lex=True):
    out: list[tuple[str, tuple[int, ...], VertexOrdering | None]] = []
    if mono:
        out.append((MONO, tuple([0] * H.m), None))
    if rainbow and (H.m > 1 or not mono):
        out.append((RAINBOW, tuple(range(H.m)), None))
    if lex:
        for c in classes or []:
            out.append((LEX, c.pattern.blocks, c.sigma))
    return out


def find_canonical_copies(
    cg: ColouredGraph,
    H: Graph,
    mode: str = "weak",
    sigma: VertexOrdering | Sequence[int] | None = None,
    limit: int | None = None,
) -> CopySearchResult:
    """Canonical copies of H in (G, chi).

    mode ``mono``/``rainbow``: all such copies (unlabelled) up to ``limit``;
    ``lex``: copies lexicographic for ``sigma`` (embedding matches sigma exactly);
    ``lex-all``: one witness per lexicographic class, the rest in ``missing``;
    ``weak``: the first canonical copy of any kind.
    """
    if H.m == 0:
        raise ValueError("H must have at least one edge")
    cap = 0 if limit is None else limit
    if mode in ("mono", "rainbow"):
        kind = MONO if mode == "mono" else RAINBOW
        blocks = tuple([0] * H.m) if kind == MONO else tuple(range(H.m))
        matcher = _Matcher(H, [(kind, blocks, None)])
        hits, _ = _search(cg, H, matcher, cap)
        return CopySearchResult([matcher.witness(0, e) for e in hits[0]])
    if mode == "lex":
        if sigma is None:
            raise ValueError("mode 'lex' needs an ordering")
        sig = sigma if isinstance(sigma, VertexOrdering) else VertexOrdering(tuple(sigma))
        matcher = _Matcher(H, [(LEX, lex_pattern(H, sig).blocks, sig)])
        hits, _ = _search(cg, H, matcher, cap)
        return CopySearchResult([matcher.witness(0, e) for e in hits[0]])
    if mode == "lex-all":
        classes = enumerate_lex_patterns(H)
        matcher = _Matcher(H, _targets(H, classes, mono=False, rainbow=False))
        hits, _ = _search(cg, H, matcher, 1)
        found = [matcher.witness(i, h[0]) for i, h in enumerate(hits) if h]
        missing = [c for c, h in zip(classes, hits) if not h]
        return CopySearchResult(found, missing)
    if mode == "weak":
        prof = canonical_profile(cg, H)
        ws = prof.witnesses()
        if not ws:
            return CopySearchResult([])
        # earliest in embedding order among the kinds found
        return CopySearchResult([min(ws, key=lambda w: w.embedding)])
    raise ValueError(f"unknown mode {mode!r}")


def canonical_profile(cg: ColouredGraph, H: Graph, classes: list[PatternClass] | None = None) -> CanonicalProfile:
    """First witness of every canonical kind, from a single scan."""
    classes = classes if classes is not None else enumerate_lex_patterns(H)
    targets = _targets(H, classes)
    matcher = _Matcher(H, targets)
    hits, _ = _search(cg, H, matcher, 1)
    mono = rainbow = None
    lex: list[CanonicalWitness | None] = []
    for i, (kind, _, _) in enumerate(targets):
        w = matcher.witness(i, hits[i][0]) if hits[i] else None
        if kind == MONO:
            mono = w
        elif kind == RAINBOW:
            rainbow = w
        else:
            lex.append(w)
    if H.m == 1:
        rainbow = mono
    return CanonicalProfile(mono, rainbow, lex, classes)


def count_canonical_copies(cg: ColouredGraph, H: Graph) -> dict[str, int]:
    """Number of unlabelled copies of each canonical kind (no early exit)."""
    classes = enumerate_lex_patterns(H)
    targets = _targets(H, classes)
    matcher = _Matcher(H, targets)
    _, counts = _search(cg, H, matcher, 0)
    out = {"mono": 0, "rainbow": 0, "lex": 0}
    for (kind, _, _), c in zip(targets, counts):
        out[{"monochromatic": "mono", "rainbow": "rainbow", "lexicographic": "lex"}[kind]] += c
    return out


# -- deciders -------------------------------------------------------------

@dataclass
class DecisionResult:
    holds: bool
    examined: int
    counterexample: EdgePartition | None = None
    strength: str = "strong"

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "strength": self.strength,
            "examined": self.examined,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


class _CopyTable:
    """All labelled embeddings of H in G as arrays of G-edge indices, with
    vectorised pattern evaluation for a batch of colourings."""

    def __init__(self, G: Graph, H: Graph, targets: PatternTargets):
        embs = list(iter_embeddings(H, G))
        self.idx = np.array([[G.edge_index(e[u], e[v]) for u, v in H.edges] for e in embs], dtype=np.int64).reshape(len(embs), H.m)
        self.I, self.J, self.w = _pair_index(H.m)
        self.targets = targets

    def masks(self, colourings: np.ndarray) -> np.ndarray:
        """(batch, copies) equal-colour masks."""
        B = colourings[:, self.idx]  # batch x copies x e(H)
        eq = B[:, :, self.I] == B[:, :, self.J]
        return (eq.astype(np.int64) * self.w).sum(axis=2)

    def flags(self, colourings: np.ndarray) -> dict[str, np.ndarray]:
        """Per colouring: mono / rainbow / some lex class / every lex class present."""
        nb = colourings.shape[0]
        if self.idx.shape[0] == 0:
            z = np.zeros(nb, dtype=bool)
            return {"mono": z, "rainbow": z, "lex_any": z, "lex_all": z}
        M = self.masks(colourings)
        t = self.targets
        lex_hits = [(M == lm).any(axis=1) for lm in t.lex_masks] or [np.zeros(nb, dtype=bool)]
        return {
            "mono": (M == t.mono).any(axis=1),
            "rainbow": (M == t.rainbow).any(axis=1),
            "lex_any": np.logical_or.reduce(lex_hits),
            "lex_all": np.logical_and.reduce(lex_hits),
        }

    def verdicts(self, colourings: np.ndarray, strength: str) -> np.ndarray:
        if self.idx.shape[0] == 0:
            return np.zeros(colourings.shape[0], dtype=bool)
        M = self.masks(colourings)
        t = self.targets
        ok = (M == t.mono).any(axis=1) | (M == t.rainbow).any(axis=1)
        lex_hits = [(M == lm).any(axis=1) for lm in t.lex_masks]
        if strength == "weak":
            for h in lex_hits:
                ok |= h
        else:
            if lex_hits:
                ok |= np.logical_and.reduce(lex_hits)
        return ok


def _check_strength(strength: str) -> None:
    if strength not in ("strong", "weak"):
        raise ValueError(f"strength must be 'strong' or 'weak', not {strength!r}")


def decide_canarrow(G: Graph, H: Graph, strength: str = "strong", partitions: Iterable[Sequence[int]] | None = None) -> DecisionResult:
    """Does every colouring of G contain a canonical copy of H?

    Enumerates every edge partition of G in restricted-growth order (or the
    given ``partitions``) and returns the first one that fails.
    """
    _check_strength(strength)
    if G.m > MAX_DECIDER_EDGES:
        raise SearchCapError(f"e(G)={G.m} exceeds the decider cap {MAX_DECIDER_EDGES}")
    if H.m == 0:
        raise ValueError("H must have at least one edge")
    table = _CopyTable(G, H, PatternTargets.of(H))
    if partitions is None:
        batches: Iterable[np.ndarray] = iter_rgs_batches(G.m)
    else:
        plist = [tuple(p) for p in partitions]
        batches = [np.array(plist, dtype=np.int64).reshape(len(plist), G.m)] if plist else []
    examined = 0
    for batch in batches:
        ok = table.verdicts(batch, strength)
        if not ok.all():
            first = int(np.argmin(ok))
            examined += first + 1
            return DecisionResult(False, examined, EdgePartition.from_colours(G.edges, batch[first].tolist()), strength)
        examined += len(batch)
    return DecisionResult(True, examined, None, strength)


def canonical_flags(G: Graph, H: Graph, colourings: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorised canonical-copy flags for a batch of colourings of G
    (rows indexed like ``G.edges``)."""
    table = _CopyTable(G, H, PatternTargets.of(H))
    return table.flags(np.asarray(colourings, dtype=np.int64).reshape(-1, G.m))


@dataclass
class ListCheckResult:
    holds: bool
    examined: int
    counterexample: dict[tuple[int, int], int] | None = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "examined": self.examined,
            "counterexample": None
            if self.counterexample is None
            else [[u, v, c] for (u, v), c in sorted(self.counterexample.items())],
        }


def check_list_canonical(
    G: Graph, lists: dict[tuple[int, int], Sequence[int]], H: Graph, strength: str = "strong", batch: int = 8192
) -> ListCheckResult:
    """Does every list-respecting colouring of G contain canonical copies of H?

    Colourings are visited in the product order of the lists (edges in
    sorted order, each list in the order given).
    """
    _check_strength(strength)
    per_edge = []
    for e in G.edges:
        lst = lists.get(e, lists.get((e[1], e[0])))
        if lst is None or len(lst) == 0:
            raise ValueError(f"no colour list for edge {e}")
        per_edge.append([int(c) for c in lst])
    total = math.prod(len(l) for l in per_edge)
    if total > MAX_LIST_PRODUCT:
        raise SearchCapError(f"{total} list colourings exceed the cap {MAX_LIST_PRODUCT}")
    table = _CopyTable(G, H, PatternTargets.of(H))
    examined = 0
    it = product(*per_edge)
    while True:
        chunk = [c for _, c in zip(range(batch), it)]
        if not chunk:
            break
        arr = np.array(chunk, dtype=np.int64).reshape(len(chunk), G.m)
        ok = table.verdicts(arr, strength)
        if not ok.all():
            first = int(np.argmin(ok))
            examined += first + 1
            return ListCheckResult(False, examined, dict(zip(G.edges, arr[first].tolist())))
        examined += len(chunk)
    return ListCheckResult(True, examined)


# -- densities -------------------------------------------------------------

def m2_density(H: Graph) -> Fraction:
    """max (e(F) - 1) / (v(F) - 2) over subgraphs F with v(F) > 2.

    Only induced subgraphs are scanned: for a fixed vertex set, adding edges
    raises (e - 1)/(v - 2), so the induced subgraph dominates every spanning
    subgraph on the same vertices.
    """
    n = H.n
    if n <= 2:
        raise ValueError("m2 needs a graph with more than two vertices")
    if n > 20:
        raise SearchCapError("m2 scans 2^v(H) subsets; v(H) <= 20 supported")
    # edge count of every vertex subset, built one top vertex at a time
    nbr = np.zeros(n, dtype=np.uint64)
    for u, v in H.edges:
        nbr[u] |= np.uint64(1 << v)
        nbr[v] |= np.uint64(1 << u)
    edges = np.zeros(1, dtype=np.int64)
    pop = np.zeros(1, dtype=np.int64)
    for b in range(n):
        lower = np.arange(1 << b, dtype=np.uint64)
        edges = np.concatenate([edges, edges + np.bitwise_count(lower & nbr[b]).astype(np.int64)])
        pop = np.concatenate([pop, pop + 1])
    best = None
    for v in range(3, n + 1):
        e = int(edges[pop == v].max())
        val = Fraction(e - 1, v - 2)
        if best is None or val > best:
            best = val
    return best


def chromatic_number(H: Graph) -> int:
    n = H.n
    if n == 0:
        return 0
    if H.m == 0:
        return 1
    order = sorted(range(n), key=lambda v: -H.degree(v))

    def colourable(k: int) -> bool:
        col = [-1] * n

        def rec(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            taken = {col[u] for u in H.adj(v) if col[u] >= 0}
            # symmetry: a fresh colour only as the next unused one
            for c in range(min(k, used + 1)):
                if c in taken:
                    continue
                col[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
                col[v] = -1
            return False

        return rec(0, 0)

    for k in range(1, n + 1):
        if colourable(k):
            return k
    return n


def turan_density(H: Graph) -> Fraction:
    """(r - 2)/(r - 1) for chromatic number r."""
    if H.m == 0:
        raise ValueError("Turan density is undefined for edgeless H")
    if H.n > 20:
        raise SearchCapError("exact chromatic number supported for v(H) <= 20")
    r = chromatic_number(H)
    return Fraction(r - 2, r - 1)
