from __future__ import annotations

import csv
import io

import pytest

from canramsey.experiments import (
    ExperimentConfig,
    cmd_k24_verify,
    cmd_report,
    cmd_threshold_sweep,
    cmd_two_round_demo,
    hit_frequencies,
    inversions,
    sweep_csv,
    trial_seed,
    wilson_interval,
)


def test_k24_report():
    rep = cmd_k24_verify()
    assert rep.examined == 4140 and rep.weak_holds
    assert rep.proper == rep.proper_rainbow == 108
    assert rep.non_proper_no_lex == rep.non_proper_no_lex_mono == 33
    assert rep.passed and rep.failures == []
    assert cmd_k24_verify("proper").examined == 108
    mono = cmd_k24_verify("mono")
    assert mono.examined == 1 and mono.non_proper_no_lex_mono == 1
    with pytest.raises(ValueError):
        cmd_k24_verify("odd")


def test_config_validation():
    ExperimentConfig(p=[0.1])
    for bad in (
        dict(p=[0.1], c=[1.0]),
        dict(),
        dict(p=[]),
        dict(p=[0.1], seeds=[]),
        dict(p=[0.1], seeds=[1, 1]),
        dict(p=[0.1], adversaries=["nope"]),
        dict(p=[0.1], k=1),
        dict(p=[0.1], n=[]),
    ):
        with pytest.raises(ValueError):
            ExperimentConfig(**bad)
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"p": 0.1, "colour": "x"})
    cfg = ExperimentConfig.from_dict({"p": 0.1, "n": 50, "seeds": 3})
    assert cfg.n == [50] and cfg.seeds == [0, 1, 2] and cfg.p == [0.1]
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_c_grid_scaling():
    cfg = ExperimentConfig(c=[1.0, 2.0], k=2, log_exponent=1.0)
    import math

    base = 100 ** (-2 / 3) * math.log(100)
    assert cfg.p_values(100) == pytest.approx([base, 2 * base])


def test_trial_seed_is_stable():
    assert trial_seed(0, 100, 1, "rainbow", 3) == trial_seed(0, 100, 1, "rainbow", 3)
    assert trial_seed(0, 100, 1, "rainbow", 3) != trial_seed(0, 100, 1, "rainbow", 4)
    assert 0 <= trial_seed(5, 1, 1, "x", 1) < 2**63


def test_sweep_is_deterministic():
    cfg = ExperimentConfig(n=[40], p=[0.1, 0.3], seeds=[0, 1, 2], adversaries=["random-3", "alternating-2"], timings=False)
    a = sweep_csv(cmd_threshold_sweep(cfg), timings=False)
    b = sweep_csv(cmd_threshold_sweep(cfg), timings=False)
    assert a == b
    rows = list(csv.DictReader(io.StringIO(a)))
    assert len(rows) == 12 and "time_s" not in rows[0]
    assert all(r["note"] == "degenerates to proper-greedy" for r in rows if r["adversary"] == "alternating-2")
    assert all(r["hit"] == r["weak"] for r in rows)


def test_sweep_with_copies_and_timings():
    cfg = ExperimentConfig(n=[20], p=[0.5], seeds=[0], adversaries=["rainbow"], count_copies=True)
    (rec,) = cmd_threshold_sweep(cfg)
    assert rec.copies > 0 and rec.time_s is not None and rec.flags["rainbow"]


def test_frequencies_and_inversions():
    cfg = ExperimentConfig(n=[60], p=[0.02, 0.5], seeds=list(range(5)), timings=False)
    recs = cmd_threshold_sweep(cfg)
    freqs = hit_frequencies(recs)
    assert [p for p, _ in freqs] == [0.02, 0.5]
    assert freqs[1][1] == 1.0
    assert inversions([0, 0.2, 0.1, 0.5, 0.4]) == 2
    assert inversions([0, 0, 1]) == 0


def test_wilson_interval():
    lo, hi = wilson_interval(5, 10)
    assert lo == pytest.approx(0.2366, abs=1e-4) and hi == pytest.approx(0.7634, abs=1e-4)
    assert wilson_interval(0, 10)[0] == 0.0
    assert wilson_interval(10, 10)[1] == pytest.approx(1.0)
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_report_aggregates():
    text = "n,p,adversary,hit\n10,0.5,r,1\n10,0.5,r,0\n10,0.25,r,1\n"
    out = list(csv.DictReader(io.StringIO(cmd_report([text, text]))))
    assert [(r["p"], r["trials"], r["hits"]) for r in out] == [("0.25", "2", "2"), ("0.5", "4", "2")]
    with pytest.raises(ValueError):
        cmd_report(["a,b\n1,2\n"])


def test_two_round_rainbow_golden():
    t = cmd_two_round_demo(60, 2, 0)
    assert t["p1"] == t["p2"] == pytest.approx(0.26715, abs=1e-5)
    assert t["round1"]["edges"] == 460 and t["round1"]["outcomes"] == ["gamma-dense"]
    assert t["gamma"]["edges"] == 1770
    assert t["round2"]["gamma_new_edges"] == 358 and t["round2"]["forced"] == 0
    assert t["union"]["mode"] == "statistics-only"
    assert t["union"]["list_product_log10"] == pytest.approx(170.809)


def test_two_round_mono_stops():
    t = cmd_two_round_demo(60, 2, 0, adversary="monochromatic")
    assert t["stopped"] == "canonical copy at round 1"
    assert t["round1"]["mono"]["embedding"] == [0, 4, 1, 18]
