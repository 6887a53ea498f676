"""Empirical checks of the density, limit and moment laws on generated corpora.

Each suite returns :class:`CheckLine` rows: how many trials passed and the
worst measured value against its threshold. Output depends only on
(n, seed, trials).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np

from . import generators as gen
from .cesaro_stats import check_bounds, indicator_transform, partial_stats
from .core import EstimatorConfig, IndexSet, SequencePrefix, Verdict, tail_limsup
from .density import density_profile, estimate_density, is_r_density, density_defect
from .fuzzy_limits import is_r_limit, r_limit_defect, r_limit_interval
from .stat_limits import (
    check_dense_subsequence,
    check_diff_rule,
    check_scale_rule,
    check_squeeze,
    check_sum_rule,
    exceedance_set,
    extract_witness,
    is_r_stat_limit,
    stat_defect,
)

CFG = EstimatorConfig()


@dataclass
class CheckLine:
    suite: str
    check: str
    passed: int
    total: int
    measured: float | None = None
    threshold: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.lines: list[CheckLine] = []

    def single(self, check, ok, measured=None, threshold=""):
        self.lines.append(CheckLine(self.suite, check, int(bool(ok)), 1, measured, threshold))

    def many(self, check, oks, measured=None, threshold=""):
        oks = [bool(o) for o in oks]
        self.lines.append(CheckLine(self.suite, check, sum(oks), len(oks), measured, threshold))


def _seed(base: int, trial: int) -> int:
    return base * 100_003 + trial


def suite_evens_density(n, seed, trials):
    c = _Collector("ex-2.1")
    K = gen.evens(n)
    est = estimate_density(K, CFG)
    c.single(
        "evens density exists",
        est.exists and abs(est.value - 0.5) <= 1e-3,
        est.value if est.exists else None,
        "|x - 0.5| <= 1e-3",
    )
    for x in (0.25, 0.5, 0.6):
        d = density_defect(K, x, CFG).value
        c.single(f"x={x} is a 1/2-density", is_r_density(K, x, 0.5, CFG) is Verdict.ACCEPT, d, "defect <= 0.5 + tol")
    d = density_defect(K, 1.2, CFG).value
    c.single("x=1.2 is not a 1/2-density", is_r_density(K, 1.2, 0.5, CFG) is Verdict.REJECT, d, "defect > 0.5 + 2 tol")
    return c.lines


def suite_even_digit_density(n, seed, trials):
    c = _Collector("ex-2.2")
    horizon = 10 * n
    K = gen.even_digit_evens(horizon)
    ratio = density_profile(K).ratio_at(9999)
    c.single("ratio at 9999 == 4545/9999", ratio == 4545 / 9999, ratio, "exact")
    est = estimate_density(K, replace(CFG, tail_fraction=0.9))
    c.single("density does not exist", not est.exists and est.width >= 0.35, est.width, "band width >= 0.35")
    d = density_defect(K, 0.0, CFG).value
    c.single(
        "0 is a 1/2-density",
        is_r_density(K, 0.0, 0.5, CFG) is Verdict.ACCEPT and d <= 5 / 11 + 1e-2,
        d,
        "defect <= 5/11 + 1e-2",
    )
    return c.lines


def suite_spike(n, seed, trials):
    c = _Collector("ex-2.3")
    s = gen.spike_sequence(n)
    d = stat_defect(s, 1.0, CFG).defect
    c.single("1 is a 1/2-statistical limit", is_r_stat_limit(s, 1.0, 0.5, CFG) is Verdict.ACCEPT, d, "defect <= 0.5 + tol")
    c.single("statistical defect near 1/2", 0.49 <= d <= 0.51, d, "in [0.49, 0.51]")
    c.single("not statistically convergent", is_r_stat_limit(s, 1.0, 0.0, CFG) is Verdict.REJECT, d, "defect > 2 tol")
    rd = r_limit_defect(s, 1.0, CFG)
    c.single("no r-limit (unbounded)", rd.unbounded, None, "UNBOUNDED")
    return c.lines


def suite_cesaro_equivalence(n, seed, trials):
    c = _Collector("prop-2.2")
    horizon = min(n, 10_000)
    trials = 100 if trials is None else trials
    sets = [gen.evens(horizon), gen.even_digit_evens(horizon)]
    sets += [gen.random_index_set(horizon, 0.05 + 0.9 * (t % 10) / 9, _seed(seed, t)) for t in range(trials)]
    worst = 0.0
    oks = []
    for K in sets:
        a, b = indicator_transform(K), density_profile(K).ratios
        rel = float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
        worst = max(worst, rel)
        oks.append(rel <= 1e-12)
    c.many("indicator transform == density profile", oks, worst, "relative <= 1e-12")
    seqs = [(gen.spike_sequence(n), 1.0)]
    seqs += [
        (gen.planted_sequence(0.5, 0.25, 2.0, n, seed=_seed(seed, t), mode="random").sequence, 0.5)
        for t in range(3)
    ]
    oks = []
    for l, a in seqs:
        curve = stat_defect(l, a, CFG)
        oks.append(
            all(
                d.value == tail_limsup(indicator_transform(exceedance_set(l, a, e)), CFG).value
                for e, d in curve.points
            )
        )
    c.many("defect curve == Cesaro transform of exceedance sets", oks, None, "exact")
    return c.lines


def _density_zero_deletion(horizon: int, seed: int) -> IndexSet:
    offset = int(gen.rng_for(seed, 3).integers(0, 100))
    k = np.arange(1, int(np.cbrt(horizon)) + 2)
    drop = k**3 + offset
    keep = np.ones(horizon, dtype=bool)
    keep[drop[drop <= horizon] - 1] = False
    return IndexSet.from_mask(keep)


def suite_dense_subsequences(n, seed, trials):
    c = _Collector("thm-2.1")
    s = gen.spike_sequence(n)
    h = gen.powers_of_two(n).complement()
    pair = check_dense_subsequence(s, h, 1.0, 0.5, CFG)
    c.single("spike minus powers of two: both accept", pair == (Verdict.ACCEPT, Verdict.ACCEPT), None, "ACCEPT, ACCEPT")
    trials = 20 if trials is None else trials
    oks = []
    for t in range(trials):
        sd = _seed(seed, t)
        r = (0.1, 0.25)[t % 2]
        l = gen.planted_sequence(0.5, r, 2.0, n, seed=sd, mode="random").sequence
        full, sub = check_dense_subsequence(l, _density_zero_deletion(n, sd), 0.5, r, CFG)
        oks.append(full is sub is Verdict.ACCEPT)
    c.many("planted: verdicts match on dense subsequence", oks, None, "ACCEPT, ACCEPT")
    return c.lines


def suite_witness(n, seed, trials):
    c = _Collector("thm-2.2")
    s = gen.spike_sequence(n)
    w = extract_witness(s, 1.0, 0.5, CFG)
    c.single("spike witness is the odd indices", w.indices == gen.odds(n), len(w.indices), "K == odds")
    c.single("spike witness density ~ 1/2", abs(w.density.lower.value - 0.5) <= 1e-2, w.density.lower.value, "|d - 0.5| <= 1e-2")
    c.single("spike witness tail deviation", w.tail_deviation == 0.0, w.tail_deviation, "== 0")
    trials = 50 if trials is None else trials
    dens, devs = [], []
    for t in range(trials):
        p = gen.planted_sequence(-0.5, 0.25, 2.0, n, seed=_seed(seed, t), mode="random")
        w = extract_witness(p.sequence, -0.5, 0.25, CFG)
        dens.append(w.density.lower.value)
        devs.append(w.tail_deviation)
    c.many("planted witness density", [d >= 0.75 - 1e-2 for d in dens], min(dens), ">= 0.74")
    c.many("planted witness tail deviation", [d <= 1e-3 for d in devs], max(devs), "<= 1e-3")
    return c.lines


def suite_algebra(n, seed, trials):
    c = _Collector("thm-2.3")
    trials = 100 if trials is None else trials
    oks, scale_oks = [], []
    for t in range(trials):
        sd = _seed(seed, t)
        l = gen.planted_sequence(0.5, 0.1, 2.0, n, seed=sd, mode="random").sequence
        h = gen.planted_sequence(-1.0, 0.25, 3.0, n, seed=sd + 1, mode="random").sequence
        for eps in (1.0, 0.1, 1e-3):
            oks.append(check_sum_rule(l, h, 0.5, -1.0, eps).passed)
            oks.append(check_diff_rule(l, h, 0.5, -1.0, eps).passed)
            for k in (-2.0, -1.0, 0.5, 3.0):
                scale_oks.append(check_scale_rule(l, 0.5, k, eps).passed)
    c.many("sum/difference exceedance counts", oks, None, "count <= u_n + v_n for all n")
    c.many("scaled exceedance sets identical", scale_oks, None, "exact, k in {-2,-1,0.5,3}")
    worst = -np.inf
    level_oks = []
    for i, (r, q) in enumerate([(0.1, 0.1), (0.1, 0.25), (0.25, 0.1), (0.25, 0.25)]):
        l = gen.planted_sequence(0.5, r, 2.0, n, seed=_seed(seed, 1000 + i), mode="random").sequence
        h = gen.planted_sequence(-1.0, q, 3.0, n, seed=_seed(seed, 2000 + i), mode="random").sequence
        for seq, target in ((l + h, -0.5), (l - h, 1.5)):
            d = stat_defect(seq, target, CFG).defect
            worst = max(worst, d - (r + q))
            level_oks.append(d <= r + q + 5e-2)
    c.many("combined defect <= r + q", level_oks, worst, "excess <= 5e-2")
    return c.lines


def suite_squeeze(n, seed, trials):
    c = _Collector("thm-2.4")
    trials = 50 if trials is None else trials
    count_oks, middle_oks = [], []
    worst = 0.0
    for t in range(trials):
        r = (0.1, 0.25)[t % 2]
        l, h, k, _ = gen.squeeze_triple(1.0, r, 2.0, n, seed=_seed(seed, t))
        count_oks.append(all(check_squeeze(l, h, k, 1.0, eps).passed for eps in (1.0, 0.1, 1e-3)))
        d = stat_defect(h, 1.0, CFG).defect
        worst = max(worst, d - r)
        middle_oks.append(is_r_stat_limit(h, 1.0, r, CFG) is Verdict.ACCEPT)
    c.many("squeeze counts v_n >= u_n + y_n - n", count_oks, None, "all n")
    c.many("middle sequence accepts at r", middle_oks, worst, "defect - r <= tol")
    return c.lines


def suite_moment_bounds(n, seed, trials):
    c = _Collector("thm-3.1")
    trials = 50 if trials is None else trials
    combos = [(a, r) for a in (0.0, 1.0, -2.0) for r in (0.1, 0.25)]
    mean_oks, std_oks = [], []
    mean_excess = std_excess = -np.inf
    for t in range(trials):
        a, r = combos[t % len(combos)]
        m = abs(a) + 1
        p = gen.planted_sequence(a, r, m, n, seed=_seed(seed, t), mode="random")
        mean, std = check_bounds(p.sequence, a, r, m, CFG)
        mean_excess = max(mean_excess, mean.measured.value - mean.bound)
        std_excess = max(std_excess, std.measured.value - std.bound)
        mean_oks.append(mean.passed and mean.measured.value <= mean.bound + 1e-2)
        std_oks.append(std.passed and std.measured.value <= std.bound + 1e-2)
    c.many("partial means within (m+|a|) r", mean_oks, mean_excess, "excess <= 1e-2")
    c.many("partial std within sqrt(p(2r+u))", std_oks, std_excess, "excess <= 1e-2")
    mean_tails, std_tails = [], []
    for a in (0.0, 1.0, -2.0):
        p = gen.planted_sequence(a, 0.0, abs(a) + 1, n)
        st = partial_stats(p.sequence)
        mean_tails.append(tail_limsup(np.abs(st.means - a), CFG).value)
        std_tails.append(tail_limsup(st.std_devs, CFG).value)
    c.many("r=0: partial means converge", [x <= 1e-2 for x in mean_tails], max(mean_tails), "<= 1e-2")
    c.many("r=0: partial std converges to 0", [x <= 1e-2 for x in std_tails], max(std_tails), "<= 1e-2")
    return c.lines


def bounded_test_sequence(n: int, seed: int) -> SequencePrefix:
    """Seeded bounded corpus for the interval check: noise bands, alternations
    and convergent sequences."""
    rng = gen.rng_for(seed, 4)
    center = float(rng.uniform(-2, 2))
    kind = seed % 4
    if kind == 0:
        return gen.convergent_sequence(center, n, "geometric", 0.5)
    amp = float(rng.uniform(0, 1.2))
    if kind == 1:
        i = np.arange(1, n + 1)
        return SequencePrefix(center + amp * np.where(i % 2 == 0, 1.0, -1.0))
    return SequencePrefix(center + amp * (2 * rng.random(n) - 1))


def interval_matches_scan(l: SequencePrefix, r: float, points: int = 1024) -> bool:
    iv = r_limit_interval(l, r, CFG)
    lo_edge = iv.tail_min - r - 0.5
    hi_edge = iv.tail_max + r + 0.5
    grid = np.linspace(lo_edge, hi_edge, points)
    step = grid[1] - grid[0]
    accepted = np.array([is_r_limit(l, float(x), r, CFG) is Verdict.ACCEPT for x in grid])
    if iv.empty:
        center = 0.5 * (iv.tail_max + iv.tail_min)
        return bool(np.all(np.abs(grid[accepted] - center) <= step))
    inside = (grid >= iv.low + step) & (grid <= iv.high - step)
    near = (grid >= iv.low - step) & (grid <= iv.high + step)
    return bool(np.all(accepted[inside]) and np.all(near[accepted]))


def suite_interval(n, seed, trials):
    c = _Collector("r-limit-interval")
    trials = 100 if trials is None else trials
    length = min(n, 1000)
    oks = []
    for t in range(trials):
        l = bounded_test_sequence(length, _seed(seed, t))
        oks.extend(interval_matches_scan(l, r) for r in (0.0, 0.5, 1.0))
    c.many("closed form matches 1024-point scan", oks, None, "within one grid step")
    return c.lines


SUITES: dict[str, Callable] = {
    "ex-2.1": suite_evens_density,
    "ex-2.2": suite_even_digit_density,
    "ex-2.3": suite_spike,
    "prop-2.2": suite_cesaro_equivalence,
    "thm-2.1": suite_dense_subsequences,
    "thm-2.2": suite_witness,
    "thm-2.3": suite_algebra,
    "thm-2.4": suite_squeeze,
    "thm-3.1": suite_moment_bounds,
    "r-limit-interval": suite_interval,
}


def run_suites(names, n: int = 100_000, seed: int = 42, trials: int | None = None) -> list[CheckLine]:
    if "all" in names:
        names = list(SUITES)
    lines: list[CheckLine] = []
    for name in names:
        lines.extend(SUITES[name](n, seed, trials))
    return lines


def render_text(lines: list[CheckLine]) -> str:
    out = [f"{'suite':<17} {'check':<52} {'result':<6} {'pass':>9} {'measured':>12}  threshold"]
    for ln in lines:
        measured = "-" if ln.measured is None else f"{ln.measured:.6g}"
        out.append(
            f"{ln.suite:<17} {ln.check:<52} {'PASS' if ln.ok else 'FAIL':<6} "
            f"{f'{ln.passed}/{ln.total}':>9} {measured:>12}  {ln.threshold}"
        )
    failed = sum(not ln.ok for ln in lines)
    out.append(f"{len(lines) - failed}/{len(lines)} checks passed")
    return "\n".join(out) + "\n"


def render_json(lines: list[CheckLine]) -> str:
    rows = [dict(asdict(ln), result="PASS" if ln.ok else "FAIL") for ln in lines]
    return json.dumps({"schema_version": "1", "checks": rows}, indent=2) + "\n"
