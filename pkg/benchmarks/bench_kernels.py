"""Time every kernel on the pure-Python and compiled backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--n 120] [--p 0.08]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from canramsey import kernels
from canramsey.cycles import AcyclicCycleOrientation
from canramsey.graph import ColouredGraph, GnpSpec, OrientedGraph, sample_gnp
from canramsey.partitions import cycle_code


def workloads(n: int, p: float, seed: int):
    g = sample_gnp(GnpSpec(n, p, seed))
    rng = np.random.default_rng(seed)
    cg = ColouredGraph.from_colours(g, rng.integers(0, 4, size=g.m).tolist())
    ip_d, ix_d = g.csr("degree")
    ip, ix, ec = cg.csr_colours("id")
    mask = (rng.random(n) < 0.3).astype(np.uint8)
    codes = np.array([cycle_code(c) for c in ((0, 0, 0, 0), (0, 1, 2, 3))], dtype=np.int64)
    d = OrientedGraph.orient(g, rng.random(g.m) < 0.5)
    op, oi, jp, ji = d.csr()
    # odd cycles are absent from a bipartite graph, so the search is exhaustive
    bip = g.edge_subgraph([e for e in g.edges if (e[0] - e[1]) % 2])
    bp, bx = bip.csr("id")
    bits = np.array(AcyclicCycleOrientation.from_string("0101").bits, dtype=np.uint8)
    return {
        "path_pair_counts(5)": lambda b: b.path_pair_counts(ip_d, ix_d, n, 5),
        "rainbow_pairs(4)": lambda b: b.rainbow_pairs(ip, ix, ec, cg.n_colours, n, 4),
        "cycle_census(4)": lambda b: b.cycle_census(ip, ix, n, 4, mask),
        "cycle_pattern_search(4)": lambda b: b.cycle_pattern_search(ip, ix, ec, n, 4, codes, 0),
        "find_cycle(7, absent)": lambda b: b.find_cycle(bp, bx, n, 7, 10**7),
        "orientation_count(4)": lambda b: b.orientation_count(op, oi, jp, ji, n, bits),
    }


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=120)
    ap.add_argument("--p", type=float, default=0.08)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)
    backs = kernels.backends()
    if "cython" not in backs:
        print("compiled backend not built; timing the Python backend only")
    names = sorted(backs)
    print(f"G({a.n}, {a.p}) seed {a.seed}, best of {a.repeat}")
    print(f"{'kernel':26s}" + "".join(f"{b:>12s}" for b in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads(a.n, a.p, a.seed).items():
        times = {b: best_of(lambda: fn(backs[b]), a.repeat) for b in names}
        row = f"{label:26s}" + "".join(f"{times[b]:11.4f}s" for b in names)
        if len(names) > 1:
            row += f"{times['python'] / max(times['cython'], 1e-9):11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
