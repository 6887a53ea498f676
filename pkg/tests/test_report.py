import json

import pytest

from fuzzystat import EstimatorConfig, UsageError
from fuzzystat import generators as gen
from fuzzystat.report import SCHEMA_VERSION, analyze, render_text, to_json

KEYS = {"schema_version", "n", "config", "value_range", "unbounded", "tail", "r_limit_interval",
        "candidates", "cesaro", "bounds", "caveats"}


def test_spike_report():
    rep = analyze(gen.spike_sequence(10_000).values, r=0.5, candidates=[1.0, 2.0])
    assert set(rep) == KEYS and rep["schema_version"] == SCHEMA_VERSION
    assert rep["unbounded"] and rep["r_limit_interval"]["empty"]
    assert rep["candidates"][0]["candidate"] == 1.0 and rep["candidates"][0]["verdict"] == "ACCEPT"
    json.loads(to_json(rep))
    assert "grows without bound" in render_text(rep)


def test_bounds_section():
    p = gen.planted_sequence(0.0, 0.1, 1.0, 100_000, seed=2, mode="random")
    rep = analyze(p.sequence.values, r=0.1, candidates=[0.0], a=0.0, m=1.0)
    assert rep["bounds"]["result"] == "PASS"
    rep = analyze(p.sequence.values, r=0.1, candidates=[0.0], a=0.0, m="auto")
    assert rep["bounds"]["m_source"] == "auto" and rep["bounds"]["result"] == "PASS"
    assert "mean bound" in render_text(rep)
    rep = analyze(p.sequence.values, r=0.0, candidates=[0.0], a=0.0, m=1.0)
    assert rep["bounds"]["result"] == "NOT_APPLICABLE"
    assert "NOT_APPLICABLE" in render_text(rep)
    rep = analyze(p.sequence.values, r=0.1, candidates=[0.0], a=0.0)
    assert rep["bounds"] is None and any("no bound" in c for c in rep["caveats"])


def test_default_candidates_find_limit():
    # ~20 leading terms exceed ε=1e-6; N must make 20/(N/2) < tol
    l = gen.convergent_sequence(2.0, 50_000, "geometric")
    rep = analyze(l.values, r=0.0, cfg=EstimatorConfig(eps_min=1e-6))
    best = rep["candidates"][0]
    assert best["verdict"] == "ACCEPT" and best["candidate"] == pytest.approx(2.0, abs=1e-6)
    assert not rep["r_limit_interval"]["empty"]


def test_negative_r():
    with pytest.raises(UsageError):
        analyze([1.0, 2.0], r=-1)
