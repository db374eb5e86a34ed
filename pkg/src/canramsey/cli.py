"""Command-line entry point.

Exit codes: 0 the command ran and found no violation, 1 a property
violation was found, 2 usage or input error.  Relative output paths are
resolved against $CANRAMSEY_OUT when it is set.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .adversaries import Adversary
from .experiments import (
    ExperimentConfig,
    cmd_k24_verify,
    cmd_report,
    cmd_threshold_sweep,
    cmd_two_round_demo,
    sweep_csv,
)
from .graph import ColouredGraph, GnpSpec, Graph, parse_target, sample_gnp
from .io import GraphFormatError, format_edge_list, read_edge_list
from .paths import count_paths, rainbow_focused, trichotomy, well_distributed_stat
from .patterns import SearchCapError, canonical_profile, decide_canarrow

OUT_ENV = "CANRAMSEY_OUT"
log = logging.getLogger("canramsey")


class UsageError(Exception):
    pass


def out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def emit(text: str, dest: str | None) -> None:
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        out_path(dest).write_text(text)


def emit_json(obj, dest: str | None) -> None:
    emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", dest)


def load_graph(spec: str) -> Graph | ColouredGraph:
    """An edge-list file, or a named graph such as c4, k4, p5, k2,4."""
    if Path(spec).exists():
        return read_edge_list(spec)
    try:
        return parse_target(spec)
    except ValueError:
        raise UsageError(f"{spec!r} is neither a file nor a named graph") from None


def need_coloured(obj) -> ColouredGraph:
    if not isinstance(obj, ColouredGraph):
        raise UsageError("this command needs a coloured edge list (u v colour)")
    return obj


# -- subcommands -------------------------------------------------------------------

def run_gen(a) -> int:
    g = sample_gnp(GnpSpec(a.n, a.p, a.seed))
    obj = Adversary.parse(a.colour).colour(g, a.seed) if a.colour else g
    emit(format_edge_list(obj), a.out)
    return 0


def run_canarrow(a) -> int:
    H = parse_target(a.target)
    host = load_graph(a.graph)
    if isinstance(host, ColouredGraph):
        prof = canonical_profile(host, H)
        report = {
            "mode": "colouring",
            "flags": prof.flags(),
            "witnesses": [w.to_dict() for w in prof.witnesses()],
        }
        emit_json(report, a.out)
        ok = prof.strong if a.strength == "strong" else prof.weak
    else:
        res = decide_canarrow(host, H, a.strength)
        emit_json({"mode": "all-colourings", **res.to_dict()}, a.out)
        ok = res.holds
    return 0 if ok else 1


def run_paths(a) -> int:
    obj = load_graph(a.graph)
    if a.rainbow:
        gamma = rainbow_focused(need_coloured(obj), a.length)
        emit_json({"length": a.length, "edges": gamma.gamma.m, "witnesses": gamma.witness_json()}, a.out)
        return 0
    g = obj.graph if isinstance(obj, ColouredGraph) else obj
    table = count_paths(g, a.length)
    if a.p is not None and a.xi is not None:
        stat = well_distributed_stat(g, a.length, a.p, a.xi, table)
        emit_json(stat.to_dict(), a.out)
        return 0 if stat.passed else 1
    lines = ["u,v,count"] + [f"{u},{v},{c}" for u, v, c in table.rows()]
    emit("\n".join(lines) + "\n", a.out)
    return 0


def run_trichotomy(a) -> int:
    cg = need_coloured(load_graph(a.graph))
    res = trichotomy(cg, a.k, a.rho, a.d, budget=a.budget, seed=a.seed)
    emit_json(res.to_dict(), a.out)
    return 0 if res.outcomes else 1


def run_k24(a) -> int:
    rep = cmd_k24_verify(a.restrict)
    emit_json(rep.to_dict(), a.out)
    return 0 if rep.passed else 1


def load_config(a) -> ExperimentConfig:
    data: dict = {}
    if a.config:
        try:
            data = json.loads(Path(a.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for key in ("k", "n", "p", "c", "seeds", "adversaries", "master_seed", "log_exponent"):
        val = getattr(a, key, None)
        if val is not None:
            data[key] = val
    if a.p is not None:
        data.pop("c", None)
    elif a.c is not None:
        data.pop("p", None)
    if a.no_timings:
        data["timings"] = False
    if a.count_copies:
        data["count_copies"] = True
    if "p" not in data and "c" not in data:
        data["c"] = [0.5, 1.0, 2.0, 4.0]
    return ExperimentConfig.from_dict(data)


def run_sweep(a) -> int:
    cfg = load_config(a)
    records = cmd_threshold_sweep(cfg)
    emit(sweep_csv(records, cfg.timings), a.out)
    return 0


def run_two_round(a) -> int:
    trace = cmd_two_round_demo(a.n, a.k, a.seed, a.adversary, a.p1, a.p2)
    emit_json(trace, a.out)
    return 0


def run_report(a) -> int:
    texts = []
    for f in a.csv:
        try:
            texts.append(Path(f).read_text())
        except OSError as exc:
            raise UsageError(str(exc)) from None
    emit(cmd_report(texts), a.out)
    return 0


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="canramsey", description="Canonical Ramsey experiments on random graphs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_out(p):
        p.add_argument("-o", "--out", help="output file (default stdout; relative to $%s if set)" % OUT_ENV)
        return p

    p = with_out(sub.add_parser("gen", help="sample G(n, p), optionally coloured"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colour", help="adversary, e.g. random-3, proper-greedy, rainbow")
    p.set_defaults(func=run_gen)

    p = with_out(sub.add_parser("canarrow", help="canonical copies of a target"))
    p.add_argument("graph", help="edge list (coloured: search one colouring; plain: all colourings) or name")
    p.add_argument("--target", default="c4")
    p.add_argument("--strength", choices=("strong", "weak"), default="strong")
    p.set_defaults(func=run_canarrow)

    p = with_out(sub.add_parser("paths", help="path counts or the rainbow focused graph"))
    p.add_argument("graph")
    p.add_argument("--length", type=int, default=4, help="vertices per path")
    p.add_argument("--rainbow", action="store_true", help="build the rainbow focused graph")
    p.add_argument("--p", type=float, help="with --xi: well-distributed statistic")
    p.add_argument("--xi", type=float)
    p.set_defaults(func=run_paths)

    p = with_out(sub.add_parser("trichotomy", help="mono / lex / rainbow-dense outcomes"))
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--rho", type=float, default=0.25)
    p.add_argument("--d", type=float)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=run_trichotomy)

    p = with_out(sub.add_parser("k24-verify", help="exhaustive K_{2,4} check"))
    p.add_argument("--restrict", choices=("proper", "mono"))
    p.set_defaults(func=run_k24)

    p = with_out(sub.add_parser("sweep", help="Monte Carlo sweep to CSV"))
    p.add_argument("--config", help="JSON config; flags override its keys")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--p", type=float, nargs="+")
    p.add_argument("--c", type=float, nargs="+", help="p = c n^(-1+1/(2k-1)) (log n)^e")
    p.add_argument("--log-exponent", dest="log_exponent", type=float)
    p.add_argument("--seeds", type=int, help="number of seeds (0..N-1)")
    p.add_argument("--adversaries", nargs="+")
    p.add_argument("--master-seed", dest="master_seed", type=int)
    p.add_argument("--count-copies", action="store_true")
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=run_sweep)

    p = with_out(sub.add_parser("two-round", help="two-round exposure demo trace"))
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--adversary", default="rainbow")
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.set_defaults(func=run_two_round)

    p = with_out(sub.add_parser("report", help="aggregate sweep CSVs"))
    p.add_argument("csv", nargs="+")
    p.set_defaults(func=run_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return a.func(a)
    except (UsageError, GraphFormatError, SearchCapError, ValueError) as exc:
        print(f"canramsey: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
