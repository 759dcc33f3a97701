import math

import pytest

import asyncbft


def test_coin_run_reports_common_rate():
    rows = asyncbft.run({"protocol": "coin", "n": [4], "trials": 40, "seed": 3})
    assert len(rows) == 1
    r = rows[0]
    assert r["protocol"] == "coin" and r["n"] == 4 and r["f"] == 1
    assert r["violation_trials"] == 0
    assert 0.0 <= r["common_rate"] <= 1.0
    assert r["common_rate"] >= 0.60


def test_runs_are_deterministic():
    cfg = {"protocol": "aba", "n": [4], "trials": 10, "adversary": "contradict"}
    assert asyncbft.run(cfg, threads=1) == asyncbft.run(cfg, threads=2)


def test_bad_config_names_field():
    with pytest.raises(ValueError, match="^f:"):
        asyncbft.run({"protocol": "coin", "n": [5], "f": 2})
    with pytest.raises(ValueError, match="adversary"):
        asyncbft.run({"protocol": "coin", "adversary": "forge"})


def test_fit_and_chi_square():
    slope, intercept = asyncbft.fit([1, 2, 4], [3, 12, 48])
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(math.log(3))
    stat, p, dof = asyncbft.chi_square([10, 20, 30, 40])
    assert stat == pytest.approx(20.0) and dof == 3
    assert p == pytest.approx(0.00016974243555, rel=1e-6)
    with pytest.raises(ValueError):
        asyncbft.fit([4, 7], [1, 2])


def test_transcript_replay():
    cfg = {"protocol": "election", "n": [4], "adversary": "forge"}
    data = asyncbft.transcript(cfg, 4, 0)
    assert asyncbft.replay(data) == []
    with pytest.raises(ValueError):
        asyncbft.replay(data[: len(data) // 2])


def test_presets():
    names = asyncbft.preset_names()
    assert names[0] == "acceptance-1" and len(names) == 11
    rep = asyncbft.run_preset("acceptance-10")
    assert rep["passed"], rep["checks"]
    with pytest.raises(ValueError):
        asyncbft.run_preset("acceptance-0")
