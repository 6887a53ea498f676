"""Analysis report assembly and its text rendering."""

from __future__ import annotations

import json
from dataclasses import replace

import numpy as np

from .cesaro_stats import check_bounds, partial_stats
from .core import (
    DEFAULT_CONFIG,
    EstimatorConfig,
    SequencePrefix,
    UsageError,
    tail_liminf,
    tail_limsup,
)
from .fuzzy_limits import is_unbounded, r_limit_interval
from .stat_limits import default_candidates, eps_grid_for, stat_limit_candidates

SCHEMA_VERSION = "1"
AUTO_M_INFLATION = 1e-6


def analyze(
    values,
    r: float = 0.0,
    candidates=None,
    a: float | None = None,
    m: float | str | None = None,
    cfg: EstimatorConfig = DEFAULT_CONFIG,
) -> dict:
    """Build the JSON-ready report for one series.

    ``candidates=None`` scans the default candidate grid. Bound checks run
    when both ``a`` and ``m`` are given; ``m="auto"`` uses the prefix
    maximum magnitude inflated by a relative 1e-6.
    """
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    l = SequencePrefix(values)
    grid = eps_grid_for(l.values, cfg)
    cfg = replace(cfg, eps_grid=grid)
    caveats = [
        "all quantities are finite-prefix estimates over the stated evidence windows",
    ]
    if candidates is None:
        candidates = default_candidates(l, cfg)
    scan = stat_limit_candidates(l, r, candidates, cfg)
    stats = partial_stats(l)
    unbounded = is_unbounded(l)
    if unbounded:
        caveats.append("values grow without bound across doubling windows")

    report = {
        "schema_version": SCHEMA_VERSION,
        "n": l.n,
        "config": {
            "tail_fraction": cfg.tail_fraction,
            "verdict_tol": cfg.verdict_tol,
            "eps_grid": list(grid),
            "r": r,
        },
        "value_range": {
            "min": float(l.values.min()),
            "max": float(l.values.max()),
            "window_start": 1,
            "window_end": l.n,
        },
        "unbounded": unbounded,
        "tail": {
            "limsup": tail_limsup(l.values, cfg).to_dict(),
            "liminf": tail_liminf(l.values, cfg).to_dict(),
        },
        "r_limit_interval": r_limit_interval(l, r, cfg).to_dict(),
        "candidates": [res.to_dict() for res in scan],
        "cesaro": {
            "mean": {
                "limsup": tail_limsup(stats.means, cfg).to_dict(),
                "liminf": tail_liminf(stats.means, cfg).to_dict(),
            },
            "std": {
                "limsup": tail_limsup(stats.std_devs, cfg).to_dict(),
                "liminf": tail_liminf(stats.std_devs, cfg).to_dict(),
            },
        },
        "bounds": None,
        "caveats": caveats,
    }

    if a is not None and m is not None:
        report["bounds"] = _bounds_section(l, a, r, m, cfg, caveats)
    elif a is not None:
        caveats.append("bound checks skipped: no bound m given")
    return report


def _bounds_section(l, a, r, m, cfg, caveats) -> dict:
    m_source = "given"
    if m == "auto":
        m = float(np.max(np.abs(l.values))) * (1 + AUTO_M_INFLATION)
        m_source = "auto"
        caveats.append(
            "m inferred from the prefix maximum; the bounds assume it holds for the whole sequence"
        )
        if m == 0:
            m = AUTO_M_INFLATION
    section = {"a": a, "r": r, "m": m, "m_source": m_source}
    try:
        mean, std = check_bounds(l, a, r, m, cfg)
    except UsageError as exc:
        section.update(result="NOT_APPLICABLE", reason=str(exc))
        return section
    section.update(
        result="PASS" if mean.passed and std.passed else "FAIL",
        mean=mean.to_dict(),
        std=std.to_dict(),
    )
    return section


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if x is None:
        return "-"
    return f"{x:.6g}"


def render_text(report: dict, max_candidates: int = 10) -> str:
    out = []
    add = out.append
    add(f"n = {report['n']}  (schema {report['schema_version']})")
    vr = report["value_range"]
    add(f"value range: [{_fmt(vr['min'])}, {_fmt(vr['max'])}]")
    t = report["tail"]
    add(
        f"tail window {t['limsup']['window_start']}..{t['limsup']['window_end']}: "
        f"limsup {_fmt(t['limsup']['value'])}, liminf {_fmt(t['liminf']['value'])}"
    )
    if report["unbounded"]:
        add("sequence grows without bound")
    iv = report["r_limit_interval"]
    if iv["empty"]:
        add(f"r-limit interval (r={_fmt(iv['r'])}): EMPTY ({iv['note']})")
    else:
        add(f"r-limit interval (r={_fmt(iv['r'])}): [{_fmt(iv['low'])}, {_fmt(iv['high'])}]")
    cands = report["candidates"]
    add(f"statistical-limit candidates ({len(cands)} scanned, best first):")
    for c in cands[:max_candidates]:
        add(f"  {_fmt(c['candidate']):>12}  defect {_fmt(c['defect']):>10}  {c['verdict']}")
    ce = report["cesaro"]
    add(
        f"partial means tail: [{_fmt(ce['mean']['liminf']['value'])}, "
        f"{_fmt(ce['mean']['limsup']['value'])}]"
    )
    add(f"partial std tail limsup: {_fmt(ce['std']['limsup']['value'])}")
    b = report["bounds"]
    if b is not None:
        if b["result"] == "NOT_APPLICABLE":
            add(f"bounds (a={_fmt(b['a'])}, m={_fmt(b['m'])}): NOT_APPLICABLE: {b['reason']}")
        else:
            add(
                f"mean bound: {b['mean']['result']} measured "
                f"{_fmt(b['mean']['measured']['value'])} <= {_fmt(b['mean']['bound'])}"
            )
            add(
                f"std bound:  {b['std']['result']} measured "
                f"{_fmt(b['std']['measured']['value'])} <= {_fmt(b['std']['bound'])}"
            )
    for c in report["caveats"]:
        add(f"note: {c}")
    return "\n".join(out) + "\n"
