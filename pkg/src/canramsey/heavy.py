"""Heavy and rainbow vertices, balanced / light edges, the heavy-vertex
lemmas as per-instance checks, and the layered rainbow-path construction.

Colour allocations map vertices to colour ids or ``STAR``.  ``STAR`` equals
itself (two STAR endpoints are not balanced), differs from every colour,
and no edge carries it, so every edge is light at a STAR endpoint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .constants import LayerConstants
from .cycles import AcyclicCycleOrientation, iter_orientation_copies
from .graph import ColouredGraph, Graph, OrientedGraph, cycle_graph
from .patterns import LEX, CanonicalWitness, enumerate_lex_patterns

STAR = -1
RAINBOW_VERTEX = -1


def empirical_density(g: Graph) -> float:
    return g.m / math.comb(g.n, 2) if g.n > 1 else 0.0


def colour_incidence(cg: ColouredGraph) -> list[dict[int, int]]:
    """Per vertex: colour -> number of incident edges of that colour."""
    inc: list[dict[int, int]] = [{} for _ in range(cg.n)]
    for (u, v), c in zip(cg.graph.edges, cg.colours):
        inc[u][c] = inc[u].get(c, 0) + 1
        inc[v][c] = inc[v].get(c, 0) + 1
    return inc


def _top_sum(counts: Mapping[int, int], r: int) -> int:
    return sum(sorted(counts.values(), reverse=True)[:r])


def lam_str(x: int) -> str | int:
    return "*" if x == STAR else x


# -- heaviness ------------------------------------------------------------------

@dataclass
class HeavyClassification:
    alpha: float
    heavy: tuple[int, ...]  # heavy colour per vertex, RAINBOW_VERTEX if none
    threshold: tuple[float, ...]  # alpha * d(v)
    multiplicity: tuple[int, ...]  # count of the most frequent incident colour

    def heavy_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.heavy) if c != RAINBOW_VERTEX]

    def rainbow_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.heavy) if c == RAINBOW_VERTEX]

    def allocation(self, U: Sequence[int]) -> dict[int, int]:
        """lambda = heavy colour on U; rainbow vertices get STAR."""
        return {u: self.heavy[u] for u in U}

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "heavy": [None if c == RAINBOW_VERTEX else c for c in self.heavy],
            "threshold": list(self.threshold),
        }


def classify_heavy(cg: ColouredGraph, alpha: float) -> HeavyClassification:
    """A vertex is heavy with its most frequent incident colour (ties to the
    smallest id) when that colour covers at least alpha d(v) edges.
    Isolated vertices have no incident colour and count as rainbow."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    inc = colour_incidence(cg)
    heavy, thr, mult = [], [], []
    for v in range(cg.n):
        d = cg.graph.degree(v)
        t = alpha * d
        thr.append(t)
        if not inc[v]:
            heavy.append(RAINBOW_VERTEX)
            mult.append(0)
            continue
        c, cnt = min(inc[v].items(), key=lambda kv: (-kv[1], kv[0]))
        mult.append(cnt)
        heavy.append(c if cnt >= t else RAINBOW_VERTEX)
    return HeavyClassification(alpha, tuple(heavy), tuple(thr), tuple(mult))


def allocation_violations(
    cg: ColouredGraph, lam: Mapping[int, int], alpha: float, inc: list[dict[int, int]] | None = None
) -> list[int]:
    """Vertices u with lambda(u) = c that are not (alpha; c)-heavy, or with
    lambda(u) = STAR when a colour is required."""
    inc = colour_incidence(cg) if inc is None else inc
    bad = []
    for u, c in sorted(lam.items()):
        if c == STAR or inc[u].get(c, 0) < alpha * cg.graph.degree(u):
            bad.append(u)
    return bad


# -- edge classes ----------------------------------------------------------------

@dataclass
class EdgeClassTable:
    edges: tuple[tuple[int, int], ...]
    balanced: tuple[bool, ...]
    light_u: tuple[bool, ...]  # light at the smaller endpoint
    light_v: tuple[bool, ...]  # light at the larger endpoint

    @property
    def totally_light(self) -> tuple[bool, ...]:
        return tuple(a and b for a, b in zip(self.light_u, self.light_v))

    def count(self, balanced: bool | None = None, totally_light: bool | None = None) -> int:
        tl = self.totally_light
        return sum(
            1
            for i in range(len(self.edges))
            if (balanced is None or self.balanced[i] == balanced) and (totally_light is None or tl[i] == totally_light)
        )

    def rows(self) -> list[dict]:
        tl = self.totally_light
        return [
            {"u": u, "v": v, "balanced": b, "u_light": a, "v_light": c, "totally_light": t}
            for (u, v), b, a, c, t in zip(self.edges, self.balanced, self.light_u, self.light_v, tl)
        ]


def _check_lambda(U: Sequence[int], lam: Mapping[int, int]) -> None:
    missing = [u for u in U if u not in lam]
    if missing:
        raise ValueError(f"lambda undefined on vertex {missing[0]}")


def induced_edges(g: Graph, U: Sequence[int]) -> list[tuple[int, int]]:
    us = set(U)
    return [(u, v) for u in sorted(us) for v in g.neighbours(u) if v > u and v in us]


def classify_edges(cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int]) -> EdgeClassTable:
    _check_lambda(U, lam)
    edges = induced_edges(cg.graph, U)
    bal, lu, lv = [], [], []
    for u, v in edges:
        c = cg.colour(u, v)
        bal.append(lam[u] != lam[v])
        lu.append(c != lam[u])
        lv.append(c != lam[v])
    return EdgeClassTable(tuple(edges), tuple(bal), tuple(lu), tuple(lv))


# -- heavy-vertex lemma ---------------------------------------------------------------

@dataclass
class LightSetResult:
    """Outcome of extracting W from the light-edge orientation."""

    passed: bool
    W: list[int]
    v0_size: int
    outdeg_threshold: float
    light_threshold: float
    min_light_degree: int | None
    failure: str | None = None
    arcs: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "W": self.W,
            "v0_size": self.v0_size,
            "outdeg_threshold": self.outdeg_threshold,
            "light_threshold": self.light_threshold,
            "min_light_degree": self.min_light_degree,
            "failure": self.failure,
        }


def light_orientation(cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int]) -> OrientedGraph:
    """Every edge of G[U] light at some endpoint, directed away from an
    endpoint it is light for; when light at both, towards the smaller id."""
    arcs = []
    for u, v in induced_edges(cg.graph, U):
        c = cg.colour(u, v)
        lu, lv = c != lam[u], c != lam[v]
        if lu and lv:
            arcs.append((v, u))
        elif lu:
            arcs.append((u, v))
        elif lv:
            arcs.append((v, u))
    return OrientedGraph(cg.n, arcs)


def extract_light_set(
    cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int], p: float, size: int | None = None
) -> LightSetResult:
    """Find W in U, |W| = |U|/8, whose members each have at least (p/5)|U|
    light edges into U \\ W.

    V_0 collects vertices of out-degree at least (2p/5)|U| in the light
    orientation; W is cut from V_0 by repeatedly dropping the member with
    most neighbours inside (ties drop the larger id), then checked directly.
    """
    U = sorted(set(U))
    target = size if size is not None else max(1, round(len(U) / 8))
    d = light_orientation(cg, U, lam)
    out_thr = 2 * p / 5 * len(U)
    light_thr = p / 5 * len(U)
    v0 = [u for u in U if len(d.out_neighbours(u)) >= out_thr]
    if len(v0) < target:
        return LightSetResult(False, [], len(v0), out_thr, light_thr, None, "V0-too-small", list(d.arcs))
    W = set(v0)
    g = cg.graph
    while len(W) > target:
        drop = max(W, key=lambda w: (len(g.adj(w) & W), w))
        W.discard(drop)
    rest = set(U) - W
    light_deg = {w: sum(1 for x in g.adj(w) & rest if cg.colour(w, x) != lam[w]) for w in W}
    worst = min(light_deg.values())
    ok = worst >= light_thr
    return LightSetResult(ok, sorted(W), len(v0), out_thr, light_thr, worst, None if ok else "light-degree", list(d.arcs))


@dataclass
class HeavyLemmaReport:
    alpha: float
    p: float
    U: list[int]
    precondition: list[str]
    bad_vertices: list[int]
    bad_bound: float
    balanced: int
    balanced_bound: float
    light_set: LightSetResult

    @property
    def part1(self) -> bool:
        return len(self.bad_vertices) <= self.bad_bound

    @property
    def part2(self) -> bool:
        return self.balanced >= self.balanced_bound

    @property
    def part3(self) -> bool:
        return self.light_set.passed

    @property
    def passed(self) -> bool:
        return not self.precondition and self.part1 and self.part2 and self.part3

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "p": self.p,
            "U_size": len(self.U),
            "precondition": self.precondition,
            "part1": {"bad": self.bad_vertices, "bound": self.bad_bound, "pass": self.part1},
            "part2": {"balanced": self.balanced, "bound": self.balanced_bound, "pass": self.part2},
            "part3": self.light_set.to_dict(),
        }


def bad_vertices(cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int], limit: float) -> list[int]:
    """Vertices with more than ``limit`` neighbours in some lambda^-1(c), c a colour."""
    us = set(U)
    out = []
    for v in range(cg.n):
        cnt: dict[int, int] = {}
        for w in cg.graph.adj(v) & us:
            c = lam[w]
            if c != STAR:
                cnt[c] = cnt.get(c, 0) + 1
        if cnt and max(cnt.values()) > limit:
            out.append(v)
    return out


def heavy_lemma_verify(
    cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int], alpha: float, p: float | None = None
) -> HeavyLemmaReport:
    """Check the three conclusions for one instance.  Precondition failures
    are reported; the parts are still evaluated."""
    U = sorted(set(U))
    _check_lambda(U, lam)
    n = cg.n
    p = empirical_density(cg.graph) if p is None else p
    pre = []
    if len(U) < alpha * n:
        pre.append(f"|U| = {len(U)} < alpha n = {alpha * n:.6g}")
    viol = allocation_violations(cg, {u: lam[u] for u in U}, alpha)
    if viol:
        pre.append(f"{len(viol)} vertices not heavy with their allocated colour (first {viol[0]})")
    B = bad_vertices(cg, U, lam, alpha * p * len(U))
    table = classify_edges(cg, U, lam)
    bal = sum(table.balanced)
    part3 = extract_light_set(cg, U, lam, p)
    return HeavyLemmaReport(
        alpha, p, U, pre, B, alpha * n, bal, (1 - 2 * alpha) * p * len(U) ** 2 / 2, part3
    )


# -- lexicographic copies via orientation -----------------------------------------------

@dataclass
class LexOrientationResult:
    branch: str  # "balanced-totally-light" | "lex" | "asymptotic-regime"
    count: int  # balanced and totally light edges in G[U]
    threshold: float
    witnesses: dict[int, CanonicalWitness]  # lex class index -> witness
    missing: list[int]
    classes: int
    arcs: list[tuple[int, int]] = field(default_factory=list)
    precondition: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "count": self.count,
            "threshold": self.threshold,
            "witnesses": {str(i): w.to_dict() for i, w in sorted(self.witnesses.items())},
            "missing": self.missing,
            "classes": self.classes,
            "precondition": self.precondition,
        }


def heavy_orientation(cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int]) -> OrientedGraph:
    """Balanced, light, not totally light edges of G[U], each directed from
    the endpoint whose lambda equals its colour to the endpoint it is light
    for; so chi(arc) = lambda(tail) != lambda(head)."""
    arcs = []
    for u, v in induced_edges(cg.graph, U):
        if lam[u] == lam[v]:
            continue
        c = cg.colour(u, v)
        lu, lv = c != lam[u], c != lam[v]
        if lu and not lv:
            arcs.append((v, u))
        elif lv and not lu:
            arcs.append((u, v))
    return OrientedGraph(cg.n, arcs)


def lex_via_orientation(
    cg: ColouredGraph, U: Sequence[int], lam: Mapping[int, int], alpha: float, k: int, p: float | None = None
) -> LexOrientationResult:
    """Either many balanced totally light edges in G[U], or a lexicographic
    C_2k for every ordering found as a lambda-injective copy of the induced
    acyclic orientation inside the heavy orientation."""
    U = sorted(set(U))
    _check_lambda(U, lam)
    p = empirical_density(cg.graph) if p is None else p
    pre = []
    viol = allocation_violations(cg, {u: lam[u] for u in U}, alpha)
    if viol:
        pre.append(f"{len(viol)} vertices not heavy with their allocated colour (first {viol[0]})")
    table = classify_edges(cg, U, lam)
    count = table.count(balanced=True, totally_light=True)
    threshold = p * len(U) ** 2 / 2 ** (8 * k + 1)
    H = cycle_graph(2 * k)
    classes = enumerate_lex_patterns(H)
    if count >= threshold and count > 0:
        return LexOrientationResult("balanced-totally-light", count, threshold, {}, [], len(classes), [], pre)
    d = heavy_orientation(cg, U, lam)
    witnesses: dict[int, CanonicalWitness] = {}
    missing = []

    def injective(partial: list[int], w: int) -> bool:
        return all(lam[x] != lam[w] for x in partial)

    for idx, cls in enumerate(classes):
        pattern = AcyclicCycleOrientation.from_ordering(cls.sigma.rank())
        emb = next(iter_orientation_copies(d, pattern, injective), None)
        if emb is None:
            missing.append(idx)
            continue
        wit = CanonicalWitness(LEX, emb, cls.sigma)
        assert wit.verify(cg, H), "orientation copy failed to re-verify as lexicographic"
        witnesses[idx] = wit
    branch = "lex" if not missing else "asymptotic-regime"
    return LexOrientationResult(branch, count, threshold, witnesses, missing, len(classes), list(d.arcs), pre)


# -- layered construction -------------------------------------------------------------------

@dataclass
class ConditionCheck:
    layer: int
    condition: str
    passed: bool
    value: float
    bound: float

    @property
    def margin(self) -> float:
        """Positive when the condition holds with room to spare."""
        if self.condition == "i":
            return 1 - abs(self.value - self.bound)
        lower = self.condition in ("ii", "iii", "v", "heavy-candidates") or self.condition.startswith("light-set")
        return self.value - self.bound if lower else self.bound - self.value

    def to_dict(self) -> dict:
        return {
            "layer": self.layer,
            "condition": self.condition,
            "pass": self.passed,
            "value": self.value,
            "bound": self.bound,
            "margin": self.margin,
        }


@dataclass
class LayerSystem:
    k: int
    n: int
    p: float
    layers: tuple[tuple[int, ...], ...]
    lambdas: tuple[dict[int, int], ...]
    constants: LayerConstants
    checks: list[ConditionCheck] = field(default_factory=list)

    @property
    def sizes(self) -> list[int]:
        return [len(U) for U in self.layers]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def is_star(self, i: int) -> bool:
        return all(c == STAR for c in self.lambdas[i].values())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "p": self.p,
            "layers": [list(U) for U in self.layers],
            "lambdas": [{str(u): lam_str(c) for u, c in sorted(lam.items())} for lam in self.lambdas],
            "constants": self.constants.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class LayerBuild:
    system: LayerSystem | None
    failure: ConditionCheck | None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.system is not None and self.system.valid

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "system": self.system.to_dict() if self.system else None,
            "failure": self.failure.to_dict() if self.failure else None,
            "notes": self.notes,
        }


def _good_edges(cg: ColouredGraph, u: int, prev: set[int], lam_prev: Mapping[int, int]) -> list[tuple[int, int]]:
    """(neighbour, colour) for edges uv, v in the previous layer, chi != lambda(v)."""
    out = []
    for v in cg.graph.adj(u) & prev:
        c = cg.colour(u, v)
        if c != lam_prev[v]:
            out.append((v, c))
    return out


def cross_edges(cg: ColouredGraph, U: Sequence[int], Z: set[int], lam: Mapping[int, int]) -> int:
    """Edges uz, u in U, z in Z, with chi(uz) != lambda(u)."""
    return sum(1 for u in U for z in cg.graph.adj(u) & Z if cg.colour(u, z) != lam[u])


def validate_layers(ls: LayerSystem, cg: ColouredGraph) -> list[ConditionCheck]:
    """Re-derive every layer condition from scratch."""
    k, n, p, C = ls.k, ls.n, ls.p, ls.constants
    g = cg.graph
    inc = colour_incidence(cg)
    checks: list[ConditionCheck] = []
    seen: set[int] = set()
    overlap = 0
    for U in ls.layers:
        overlap += len(seen & set(U))
        seen |= set(U)
    checks.append(ConditionCheck(0, "disjoint", overlap == 0, overlap, 0))
    for i, U in enumerate(ls.layers):
        target = C.gammas[i] * n
        checks.append(ConditionCheck(i, "i", abs(len(U) - target) <= 1, len(U), target))
        lam = ls.lambdas[i]
        if set(lam) != set(U):
            checks.append(ConditionCheck(i, "ii", False, 0, 1))
            continue
        vals = set(lam.values())
        if vals == {STAR} or not U:
            checks.append(ConditionCheck(i, "ii", True, 0.0, 0.0))
        elif STAR in vals:
            checks.append(ConditionCheck(i, "ii", False, -1.0, 0.0))
        else:
            slack = min(inc[u].get(lam[u], 0) - C.alpha * g.degree(u) for u in U)
            checks.append(ConditionCheck(i, "ii", slack >= 0, slack, 0.0))
        if i == 0:
            continue
        prev = set(ls.layers[i - 1])
        lam_prev = ls.lambdas[i - 1]
        need = C.theta * p * len(prev)
        worst_iii = math.inf
        worst_iv = 0
        for u in U:
            good = _good_edges(cg, u, prev, lam_prev)
            cols: dict[int, int] = {}
            for _, c in good:
                cols[c] = cols.get(c, 0) + 1
            if lam[u] == STAR:
                val = len(good) - _top_sum(cols, 2 * k - 1)
            else:
                val = cols.get(lam[u], 0)
            worst_iii = min(worst_iii, val)
            pre: dict[int, int] = {}
            for v in g.adj(u) & prev:
                c = lam_prev[v]
                if c != STAR:
                    pre[c] = pre.get(c, 0) + 1
            worst_iv = max(worst_iv, _top_sum(pre, 2 * k - 1))
        if not U:
            worst_iii = 0
        checks.append(ConditionCheck(i, "iii", worst_iii >= need, worst_iii, need))
        cap = C.theta / 2 * p * len(prev)
        checks.append(ConditionCheck(i, "iv", worst_iv <= cap, worst_iv, cap))
    used: set[int] = set()
    for i, U in enumerate(ls.layers[: k - 1]):
        used |= set(U)
        Z = set(range(n)) - used
        e = cross_edges(cg, U, Z, ls.lambdas[i])
        bound = C.gammas[i] * p * n * len(U)
        checks.append(ConditionCheck(i, "v", e >= bound, e, bound))
    return checks


def _majority(colours: dict[int, int]) -> tuple[int, int]:
    return min(colours.items(), key=lambda kv: (-kv[1], kv[0]))


def build_layers(
    cg: ColouredGraph,
    S: Sequence[int],
    k: int,
    constants: LayerConstants | None = None,
    p: float | None = None,
) -> LayerBuild:
    """Run the inductive layer construction and re-validate the result.

    Layer 0 is S with lambda identically STAR.  Step i keeps the vertices
    z outside earlier layers with enough edges to U_{i-1} of colour other
    than lambda_{i-1} of the far end, drops vertices with too many
    neighbours in one lambda_{i-1} class, labels z by its majority such
    colour when frequent enough (else STAR) and picks U_i either from the
    STAR vertices or, in the heavy case, via the light-set extraction.
    """
    C = constants if constants is not None else LayerConstants.default(k)
    if C.k != k:
        raise ValueError("constants were built for a different k")
    n = cg.n
    g = cg.graph
    p = empirical_density(g) if p is None else p
    S = tuple(sorted(set(S)))
    if abs(len(S) - C.rho * n) > 1:
        raise ValueError(f"|S| = {len(S)} but rho n = {C.rho * n:g}")
    layers: list[tuple[int, ...]] = [S]
    lambdas: list[dict[int, int]] = [{u: STAR for u in S}]
    used = set(S)
    notes: list[str] = []

    def fail(i: int, cond: str, value: float, bound: float) -> LayerBuild:
        return LayerBuild(None, ConditionCheck(i, cond, False, value, bound), notes)

    for i in range(1, k):
        prev, lam_prev = layers[i - 1], lambdas[i - 1]
        Z = set(range(n)) - used
        e = cross_edges(cg, prev, Z, lam_prev)
        bound = C.gammas[i - 1] * p * n * len(prev)
        if e < bound:
            return fail(i - 1, "v", e, bound)
        prev_set = set(prev)
        deg_thr = C.gammas[i - 1] / 4 * p * len(prev)
        maj_thr = C.theta * p * len(prev)
        bad = set(bad_vertices(cg, prev, lam_prev, C.alpha * p * n))
        lam_i: dict[int, int] = {}
        gdeg: dict[int, int] = {}
        for z in sorted(Z):
            good = _good_edges(cg, z, prev_set, lam_prev)
            if len(good) < deg_thr or z in bad:
                continue
            cols: dict[int, int] = {}
            for _, c in good:
                cols[c] = cols.get(c, 0) + 1
            gdeg[z] = len(good)
            if cols:
                c, cnt = _majority(cols)
                lam_i[z] = c if cnt >= maj_thr else STAR
            else:
                lam_i[z] = STAR
        target = max(1, round(C.gammas[i] * n))
        by_degree = lambda vs: sorted(vs, key=lambda z: (-gdeg[z], z))  # noqa: E731
        stars = [z for z, c in lam_i.items() if c == STAR]
        if len(stars) >= target:
            Ui = tuple(sorted(by_degree(stars)[:target]))
            notes.append(f"layer {i}: STAR case ({len(stars)} candidates)")
        else:
            heavy = [z for z, c in lam_i.items() if c != STAR]
            want = target if i == k - 1 else max(1, round(8 * C.gammas[i] * n))
            if len(heavy) < want:
                return fail(i, "heavy-candidates", len(heavy), want)
            Ucand = by_degree(heavy)[:want]
            if i == k - 1:
                Ui = tuple(sorted(Ucand))
            else:
                res = extract_light_set(cg, Ucand, lam_i, p, size=target)
                if not res.passed:
                    return fail(i, f"light-set:{res.failure}", res.min_light_degree or res.v0_size, res.light_threshold)
                Ui = tuple(res.W)
            notes.append(f"layer {i}: heavy case ({len(heavy)} candidates)")
        layers.append(Ui)
        lambdas.append({u: lam_i[u] for u in Ui})
        used |= set(Ui)
    ls = LayerSystem(k, n, p, tuple(layers), tuple(lambdas), C)
    ls.checks = validate_layers(ls, cg)
    return LayerBuild(ls, None, notes)


# -- layered rainbow paths ------------------------------------------------------------------

@dataclass
class LayeredPathCount:
    counts: list[int]  # counts[l - 1] = admissible P_2l
    betas: list[float]
    paths: list[list[tuple[int, ...]]] | None = None

    @property
    def passed(self) -> list[bool]:
        return [c >= b for c, b in zip(self.counts, self.betas)]

    def to_dict(self) -> dict:
        return {"counts": self.counts, "betas": self.betas, "pass": self.passed}


def admissible_extension(cg: ColouredGraph, path: Sequence[int], w: int, z: int, lam: Mapping[int, int]) -> bool:
    """(w, path, z) is rainbow, lambda(w) and lambda(z) avoid its colours and
    coincide only when both are STAR."""
    if w == z or w in path or z in path:
        return False
    g = cg.graph
    if not (g.has_edge(w, path[0]) and g.has_edge(path[-1], z)):
        return False
    full = [w, *path, z]
    cols = [cg.colour(a, b) for a, b in zip(full, full[1:])]
    if len(set(cols)) != len(cols):
        return False
    lw, lz = lam[w], lam[z]
    if lw in cols or lz in cols:
        return False
    return lw != lz or lw == STAR


def base_edges(ls: LayerSystem, cg: ColouredGraph) -> list[tuple[int, int]]:
    """Admissible edges inside the innermost layer: all of them when lambda
    is STAR there, otherwise the balanced and totally light ones."""
    top = ls.layers[-1]
    edges = induced_edges(cg.graph, top)
    if ls.is_star(ls.k - 1):
        return edges
    table = classify_edges(cg, top, ls.lambdas[-1])
    tl = table.totally_light
    return [e for e, b, t in zip(table.edges, table.balanced, tl) if b and t]


def count_layered_paths(ls: LayerSystem, cg: ColouredGraph, keep_paths: bool = False) -> LayeredPathCount:
    """Admissible rainbow paths on 2l vertices with endpoints in U_{k-l},
    built outward from the innermost layer one layer pair at a time."""
    k = ls.k
    g = cg.graph
    level: list[tuple[int, ...]] = [tuple(e) for e in base_edges(ls, cg)]
    counts = [len(level)]
    kept = [list(level)] if keep_paths else None
    for ell in range(2, k + 1):
        j = k - ell
        layer = set(ls.layers[j])
        lam = ls.lambdas[j]
        nxt: list[tuple[int, ...]] = []
        for path in level:
            ws = sorted(g.adj(path[0]) & layer)
            zs = sorted(g.adj(path[-1]) & layer)
            for w in ws:
                for z in zs:
                    if admissible_extension(cg, path, w, z, lam):
                        nxt.append((w, *path, z))
        level = nxt
        counts.append(len(level))
        if kept is not None:
            kept.append(list(level))
    betas = [ls.constants.beta(ell, ls.p, ls.sizes) for ell in range(1, k + 1)]
    return LayeredPathCount(counts, betas, kept)
