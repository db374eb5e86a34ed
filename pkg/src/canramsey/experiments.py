"""Reproducible experiments: the exhaustive K_{2,4} check, Monte Carlo
sweeps against adversarial colourings, the two-round exposure demo and
frequency reports."""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .adversaries import Adversary, degenerates
from .graph import ColouredGraph, GnpSpec, Graph, complete_bipartite, cycle_graph, sample_gnp
from .partitions import EdgePartition, iter_rgs_batches
from .paths import rainbow_focused, trichotomy
from .patterns import (
    MAX_LIST_PRODUCT,
    SearchCapError,
    canonical_flags,
    canonical_profile,
    check_list_canonical,
    count_canonical_copies,
    decide_canarrow,
)

log = logging.getLogger(__name__)


# -- K_{2,4} ------------------------------------------------------------------

@dataclass
class K24Report:
    examined: int
    weak_holds: bool
    proper: int  # proper partitions examined
    proper_rainbow: int  # of which contain a rainbow C_4
    non_proper_no_lex: int  # non-proper partitions without a lexicographic C_4
    non_proper_no_lex_mono: int  # of which contain a monochromatic C_4
    failures: list[dict] = field(default_factory=list)

    @property
    def proper_claim(self) -> bool:
        return self.proper_rainbow == self.proper

    @property
    def non_proper_claim(self) -> bool:
        return self.non_proper_no_lex_mono == self.non_proper_no_lex

    @property
    def passed(self) -> bool:
        return self.weak_holds and self.proper_claim and self.non_proper_claim

    def to_dict(self) -> dict:
        return {
            "examined": self.examined,
            "weak_holds": self.weak_holds,
            "proper": self.proper,
            "proper_rainbow": self.proper_rainbow,
            "proper_claim": self.proper_claim,
            "non_proper_no_lex": self.non_proper_no_lex,
            "non_proper_no_lex_mono": self.non_proper_no_lex_mono,
            "non_proper_claim": self.non_proper_claim,
            "passed": self.passed,
            "failures": self.failures,
        }


def _is_proper(edges: Sequence[tuple[int, int]], blocks: Sequence[int]) -> bool:
    return EdgePartition(tuple(edges), tuple(blocks)).is_proper()


def cmd_k24_verify(restrict: str | None = None) -> K24Report:
    """Every edge partition of K_{2,4} against C_4.

    ``restrict`` limits the run to "proper" partitions or to the single
    "mono" partition.
    """
    G = complete_bipartite(2, 4)
    H = cycle_graph(4)
    parts: list[tuple[int, ...]] = []
    for batch in iter_rgs_batches(G.m):
        for row in batch.tolist():
            if restrict == "proper" and not _is_proper(G.edges, row):
                continue
            if restrict == "mono" and any(row):
                continue
            parts.append(tuple(row))
    if restrict not in (None, "proper", "mono"):
        raise ValueError("restrict must be None, 'proper' or 'mono'")
    weak = decide_canarrow(G, H, "weak", partitions=parts)
    flags = canonical_flags(G, H, np.array(parts, dtype=np.int64))
    proper = np.array([_is_proper(G.edges, p) for p in parts], dtype=bool)
    no_lex = ~proper & ~flags["lex_any"]
    failures = []
    for i in np.nonzero(proper & ~flags["rainbow"])[0][:10]:
        failures.append({"claim": "proper-rainbow", "blocks": list(parts[i])})
    for i in np.nonzero(no_lex & ~flags["mono"])[0][:10]:
        failures.append({"claim": "non-proper-mono", "blocks": list(parts[i])})
    if not weak.holds:
        failures.append({"claim": "weak", "blocks": list(weak.counterexample.blocks)})
    return K24Report(
        len(parts),
        weak.holds,
        int(proper.sum()),
        int((proper & flags["rainbow"]).sum()),
        int(no_lex.sum()),
        int((no_lex & flags["mono"]).sum()),
        failures,
    )


# -- sweeps ---------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    name: str = "sweep"
    k: int = 2
    n: list[int] = field(default_factory=lambda: [200])
    p: list[float] | None = None
    c: list[float] | None = None  # p = c n^(-1 + 1/(2k-1)) (log n)^log_exponent
    log_exponent: float = 0.0
    seeds: list[int] = field(default_factory=lambda: list(range(10)))
    adversaries: list[str] = field(default_factory=lambda: ["random-3"])
    master_seed: int = 0
    count_copies: bool = False
    timings: bool = True

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not self.n:
            raise ValueError("n grid is empty")
        if (self.p is None) == (self.c is None):
            raise ValueError("give exactly one of p or c")
        grid = self.p if self.p is not None else self.c
        if not grid:
            raise ValueError("p grid is empty")
        if not self.seeds:
            raise ValueError("seed list is empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")
        if not self.adversaries:
            raise ValueError("adversary list is empty")
        for a in self.adversaries:
            Adversary.parse(a)

    FIELDS = ("name", "k", "n", "p", "c", "log_exponent", "seeds", "adversaries", "master_seed", "count_copies", "timings")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        unknown = set(data) - set(cls.FIELDS)
        if unknown:
            raise ValueError(f"unknown config key(s): {sorted(unknown)}")
        data = dict(data)
        if isinstance(data.get("seeds"), int):
            data["seeds"] = list(range(data["seeds"]))
        for key in ("n", "p", "c"):
            if key in data and data[key] is not None and not isinstance(data[key], list):
                data[key] = [data[key]]
        return cls(**data)

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}

    def p_values(self, n: int) -> list[float]:
        if self.p is not None:
            return [float(x) for x in self.p]
        base = n ** (-1 + 1 / (2 * self.k - 1)) * math.log(n) ** self.log_exponent
        return [c * base for c in self.c]


def trial_seed(master: int, n: int, p_index: int, adversary: str, trial: int) -> int:
    """Stable 63-bit seed, independent of scheduling."""
    key = f"{master}|{n}|{p_index}|{adversary}|{trial}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big") >> 1


SWEEP_COLUMNS = [
    "n", "p_index", "p", "adversary", "seed", "trial_seed", "edges",
    "mono", "rainbow", "lex_any", "lex_all", "weak", "strong", "hit", "note", "copies", "time_s",
]


@dataclass
class SweepRecord:
    n: int
    p_index: int
    p: float
    adversary: str
    seed: int
    trial_seed: int
    edges: int
    flags: dict[str, bool]
    note: str = ""
    copies: int | None = None
    time_s: float | None = None

    @property
    def hit(self) -> bool:
        return self.flags["weak"]

    def row(self) -> dict:
        out = {
            "n": self.n,
            "p_index": self.p_index,
            "p": f"{self.p:.10g}",
            "adversary": self.adversary,
            "seed": self.seed,
            "trial_seed": self.trial_seed,
            "edges": self.edges,
            "hit": int(self.hit),
            "note": self.note,
            "copies": "" if self.copies is None else self.copies,
            "time_s": "" if self.time_s is None else f"{self.time_s:.4f}",
        }
        for key in ("mono", "rainbow", "lex_any", "lex_all", "weak", "strong"):
            out[key] = int(self.flags[key])
        return out


def run_trial(n: int, p_index: int, p: float, adversary: str, seed: int, cfg: ExperimentConfig) -> SweepRecord:
    adv = Adversary.parse(adversary)
    ts = trial_seed(cfg.master_seed, n, p_index, adv.name, seed)
    t0 = time.perf_counter()
    g = sample_gnp(GnpSpec(n, p, ts))
    cg = adv.colour(g, ts ^ 0x5DEECE66D)
    H = cycle_graph(2 * cfg.k)
    prof = canonical_profile(cg, H)
    flags = prof.flags()
    copies = None
    if cfg.count_copies:
        copies = sum(count_canonical_copies(cg, H).values())
    note = "degenerates to proper-greedy" if degenerates(adv, g) else ""
    elapsed = time.perf_counter() - t0 if cfg.timings else None
    return SweepRecord(n, p_index, p, adv.name, seed, ts, g.m, flags, note, copies, elapsed)


def cmd_threshold_sweep(cfg: ExperimentConfig) -> list[SweepRecord]:
    """One record per (n, p, adversary, seed), sorted by (n, p, adversary, seed)."""
    records = []
    for n in cfg.n:
        for pi, p in enumerate(cfg.p_values(n)):
            if not 0 <= p <= 1:
                log.warning("skipping n=%d p=%g: p outside [0, 1]", n, p)
                continue
            for adv in cfg.adversaries:
                for s in cfg.seeds:
                    records.append(run_trial(n, pi, p, adv, s, cfg))
    records.sort(key=lambda r: (r.n, r.p, r.adversary, r.seed))
    return records


def sweep_csv(records: Iterable[SweepRecord], timings: bool = True) -> str:
    cols = SWEEP_COLUMNS if timings else [c for c in SWEEP_COLUMNS if c != "time_s"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def hit_frequencies(records: Sequence[SweepRecord]) -> list[tuple[float, float]]:
    """(p, hit frequency) along the p grid, for one n and adversary."""
    by_p: dict[float, list[bool]] = {}
    for r in records:
        by_p.setdefault(r.p, []).append(r.hit)
    return [(p, sum(v) / len(v)) for p, v in sorted(by_p.items())]


def inversions(values: Sequence[float]) -> int:
    """Adjacent decreases along a sequence."""
    return sum(1 for a, b in zip(values, values[1:]) if b < a)


# -- report -----------------------------------------------------------------------

REPORT_COLUMNS = ["n", "adversary", "p", "trials", "hits", "frequency", "wilson_low", "wilson_high"]


def wilson_interval(hits: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    phat = hits / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def cmd_report(texts: Iterable[str]) -> str:
    """Aggregate sweep CSVs into hit frequencies per (n, adversary, p)."""
    groups: dict[tuple[int, str, float], list[int]] = {}
    for text in texts:
        reader = csv.DictReader(io.StringIO(text))
        need = {"n", "p", "adversary", "hit"}
        if reader.fieldnames is None or not need <= set(reader.fieldnames):
            raise ValueError(f"sweep CSV must have columns {sorted(need)}")
        for row in reader:
            key = (int(row["n"]), row["adversary"], float(row["p"]))
            groups.setdefault(key, []).append(int(row["hit"]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for (n, adv, p), hits in sorted(groups.items()):
        h, t = sum(hits), len(hits)
        lo, hi = wilson_interval(h, t)
        w.writerow([n, adv, f"{p:.10g}", t, h, f"{h / t:.6f}", f"{lo:.6f}", f"{hi:.6f}"])
    return buf.getvalue()


# -- two-round exposure -----------------------------------------------------------------

def default_p(n: int, k: int) -> float:
    return min(1.0, n ** (-1 + 1 / (2 * k - 1)) * math.log(n))


def cmd_two_round_demo(
    n: int,
    k: int,
    seed: int,
    adversary: str = "rainbow",
    p1: float | None = None,
    p2: float | None = None,
    rho: float = 0.25,
    union_cap: int = 10**5,
) -> dict:
    """Round 1: colour G_1 adversarially and build the rainbow focused graph
    Gamma on 2k vertices.  Round 2: each new edge of G_2 inside Gamma gets
    the colours of its witness rainbow path as its list; report whether
    the lists force canonical copies."""
    p1 = default_p(n, k) if p1 is None else p1
    p2 = default_p(n, k) if p2 is None else p2
    adv = Adversary.parse(adversary)
    s1 = trial_seed(seed, n, 0, "round1", 0)
    s2 = trial_seed(seed, n, 1, "round2", 0)
    g1 = sample_gnp(GnpSpec(n, p1, s1))
    cg1 = adv.colour(g1, s1)
    trace: dict = {"n": n, "k": k, "seed": seed, "adversary": adv.name, "p1": p1, "p2": p2}
    tri = trichotomy(cg1, k, rho, budget=2000, seed=seed)
    trace["round1"] = {
        "edges": g1.m,
        "colours": cg1.n_colours,
        "outcomes": sorted(tri.outcomes),
        "mono": tri.mono.to_dict() if tri.mono else None,
        "lex_found": len(tri.lex),
        "lex_missing": tri.lex_missing,
    }
    if "mono-C2k" in tri.outcomes or "lex-all-C2k" in tri.outcomes:
        trace["stopped"] = "canonical copy at round 1"
        return trace
    gamma = rainbow_focused(cg1, 2 * k)
    trace["gamma"] = {"edges": gamma.gamma.m, "density": tri.density.to_dict()}
    g2 = sample_gnp(GnpSpec(n, p2, s2))
    new_edges = [e for e in g2.edges if gamma.gamma.has_edge(*e) and not g1.has_edge(*e)]
    lists = {}
    for e in new_edges:
        path = gamma.witness[e]
        lists[e] = sorted({cg1.colour(a, b) for a, b in zip(path, path[1:])})
    H = cycle_graph(2 * k)
    per_edge = []
    forced = 0
    for e in new_edges:
        path = gamma.witness[e]
        # local check on the cycle formed by the witness path and e
        local = Graph(n, list(zip(path, path[1:])) + [e])
        local_lists = {tuple(sorted(pe)): [cg1.colour(*pe)] for pe in zip(path, path[1:])}
        local_lists[e] = lists[e]
        res = check_list_canonical(local, local_lists, H, "weak")
        forced += res.holds
        per_edge.append({"edge": list(e), "list": lists[e], "forced": res.holds})
    trace["round2"] = {
        "edges": g2.m,
        "gamma_new_edges": len(new_edges),
        "list_sizes": sorted({len(v) for v in lists.values()}),
        "forced": forced,
        "per_edge": per_edge,
    }
    total = math.prod(len(v) for v in lists.values())
    if new_edges and total <= min(union_cap, MAX_LIST_PRODUCT):
        used = {tuple(sorted(pe)) for e in new_edges for pe in zip(gamma.witness[e], gamma.witness[e][1:])}
        union = Graph(n, sorted(used | set(new_edges)))
        union_lists = {pe: [cg1.colour(*pe)] for pe in used}
        union_lists.update(lists)
        try:
            res = check_list_canonical(union, union_lists, H, "weak")
            trace["union"] = {"mode": "exhaustive", **res.to_dict()}
        except SearchCapError as exc:
            trace["union"] = {"mode": "statistics-only", "reason": str(exc)}
    else:
        trace["union"] = {"mode": "statistics-only", "list_product_log10": round(math.log10(total), 3)}
    return trace
