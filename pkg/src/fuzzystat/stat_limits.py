"""r-statistical limits: exceedance densities, defect curves and witnesses.

For a candidate a and ε > 0 the exceedance set is {i : |a_i - a| ≥ ε}. The
candidate is an r-statistical limit when, for every ε, 0 is an r-density of
that set, i.e. the tail limsup of its density ratios is at most r. The defect
of a candidate is that limsup maximized over an ε grid; since exceedance sets
grow as ε shrinks, the maximum sits at the finest ε.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_CONFIG,
    DefectEstimate,
    EstimatorConfig,
    IndexSet,
    RejectedCandidate,
    SequencePrefix,
    UsageError,
    Verdict,
    tail_limsup,
    threshold_verdict,
)
from .cesaro_stats import partial_means
from .density import DensityEstimate, estimate_density, subsequence_density

# ε below this fraction of the value scale is floating-point noise
EPS_FLOOR = 1e-9


def eps_grid_for(values, cfg: EstimatorConfig = DEFAULT_CONFIG) -> tuple[float, ...]:
    """The ε grid used for a sequence: explicit if configured, else derived.

    The derived grid starts at half the tail range (or ``cfg.eps_max``) and
    halves ``eps_count - 1`` times, or is log-spaced down to ``cfg.eps_min``.
    Nothing goes below ``EPS_FLOOR`` times the largest magnitude in the prefix.
    """
    if cfg.eps_grid is not None:
        return cfg.eps_grid
    values = np.asarray(values, dtype=np.float64)
    start, end = cfg.window(values.size)
    tail = values[start - 1 : end]
    scale = float(np.max(np.abs(values))) or 1.0
    floor = EPS_FLOOR * scale
    if cfg.eps_max is not None:
        eps_max = float(cfg.eps_max)
    else:
        # a near-constant tail must not push the automatic top below eps_min
        eps_max = max(float(tail.max() - tail.min()) / 2, cfg.eps_min or 0.0)
    eps_max = max(eps_max, floor)
    if cfg.eps_min is not None:
        if cfg.eps_min > eps_max:
            raise UsageError(f"eps_min {cfg.eps_min} exceeds eps_max {eps_max}")
        grid = np.geomspace(eps_max, max(cfg.eps_min, floor), cfg.eps_count)
    else:
        grid = eps_max * 2.0 ** -np.arange(cfg.eps_count)
    out: list[float] = []
    for e in np.maximum(grid, floor):
        if not out or e < out[-1]:
            out.append(float(e))
    return tuple(out)


def exceedance_set(l: SequencePrefix, a: float, eps: float) -> IndexSet:
    """{i ≤ N : |a_i - a| ≥ ε}."""
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps}")
    return IndexSet.from_mask(np.abs(l.values - a) >= eps)


def agreement_ratio(l: SequencePrefix, a: float, eps: float, n: int) -> float:
    """(1/n)|{i ≤ n : |a_i - a| < ε}|."""
    if not 1 <= n <= l.n:
        raise UsageError(f"n={n} outside 1..{l.n}")
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps}")
    return int(np.count_nonzero(np.abs(l.values[:n] - a) < eps)) / n


@dataclass(frozen=True)
class StatDefectCurve:
    candidate: float
    points: tuple[tuple[float, DefectEstimate], ...]
    defect: float

    @property
    def eps(self) -> tuple[float, ...]:
        return tuple(e for e, _ in self.points)

    @property
    def upper_densities(self) -> tuple[float, ...]:
        return tuple(d.value for _, d in self.points)

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "defect": self.defect,
            "curve": [{"eps": e, "upper_density": d.to_dict()} for e, d in self.points],
        }


def _exceedance_ratios(dev: np.ndarray, eps: float, ns: np.ndarray) -> np.ndarray:
    return np.cumsum(dev >= eps) / ns


def stat_defect(
    l: SequencePrefix, a: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> StatDefectCurve:
    grid = eps_grid_for(l.values, cfg)
    dev = np.abs(l.values - a)
    ns = np.arange(1, l.n + 1)
    points = tuple((e, tail_limsup(_exceedance_ratios(dev, e, ns), cfg)) for e in grid)
    defect = max(d.value for _, d in points)
    return StatDefectCurve(float(a), points, defect)


def is_r_stat_limit(
    l: SequencePrefix, a: float, r: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> Verdict:
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    return threshold_verdict(stat_defect(l, a, cfg).defect, r, cfg.verdict_tol)


@dataclass(frozen=True)
class CandidateResult:
    curve: StatDefectCurve
    verdict: Verdict

    @property
    def candidate(self) -> float:
        return self.curve.candidate

    @property
    def defect(self) -> float:
        return self.curve.defect

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, **self.curve.to_dict()}


def default_candidates(
    l: SequencePrefix, cfg: EstimatorConfig = DEFAULT_CONFIG, count: int = 256
) -> list[float]:
    """Evenly spaced points over the tail range plus the tail median and the
    final Cesàro mean."""
    start, end = cfg.window(l.n)
    tail = l.values[start - 1 : end]
    pts = set(np.linspace(tail.min(), tail.max(), count).tolist())
    pts.add(float(np.median(tail)))
    pts.add(float(partial_means(l)[-1]))
    return sorted(pts)


def stat_limit_candidates(
    l: SequencePrefix,
    r: float,
    candidates=None,
    cfg: EstimatorConfig = DEFAULT_CONFIG,
) -> list[CandidateResult]:
    """Defect curve and verdict per candidate, sorted by defect then value."""
    if candidates is None:
        candidates = default_candidates(l, cfg)
    candidates = [float(c) for c in candidates]
    if not candidates:
        raise UsageError("candidate grid must not be empty")
    # pin the grid once so every candidate is judged on the same ε values
    cfg = replace(cfg, eps_grid=eps_grid_for(l.values, cfg))
    out = []
    for c in candidates:
        curve = stat_defect(l, c, cfg)
        out.append(CandidateResult(curve, threshold_verdict(curve.defect, r, cfg.verdict_tol)))
    out.sort(key=lambda res: (res.defect, res.candidate))
    return out


@dataclass(frozen=True)
class Witness:
    """Index set on which the sequence converges to the candidate."""

    indices: IndexSet
    density: DensityEstimate
    tail_deviation: float
    schedule: tuple[tuple[float, int], ...]
    target_density: float

    def to_dict(self) -> dict:
        return {
            "size": len(self.indices),
            "density": self.density.to_dict(),
            "tail_deviation": self.tail_deviation,
            "target_density": self.target_density,
            "schedule": [{"eps": e, "from_index": p} for e, p in self.schedule],
        }


def extract_witness(
    l: SequencePrefix, a: float, r: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> Witness:
    """Build K with density about 1 - r on which a_i → a.

    Index i is kept when |a_i - a| < ε(i), where ε(i) steps down the ε grid
    at switch points p_0 ≤ p_1 ≤ ... . Each switch point is the first index
    from which using the finer ε keeps the running density of K at or above
    ``1 - r - tol`` for every later n. Levels that cannot be afforded anywhere
    end the schedule.
    """
    verdict = is_r_stat_limit(l, a, r, cfg)
    if verdict is not Verdict.ACCEPT:
        raise RejectedCandidate(f"{a} is not an accepted {r}-statistical limit ({verdict.value})")
    target = 1.0 - r - cfg.verdict_tol
    n = l.n
    ns = np.arange(1, n + 1)
    dev = np.abs(l.values - a)
    thresholds = np.full(n, np.inf)
    kept_cum = ns.astype(np.int64)  # before the first switch everything is kept
    p_prev = 1
    schedule = []
    for eps in eps_grid_for(l.values, cfg):
        agree_cum = np.cumsum(dev < eps)
        slack = agree_cum - target * ns
        suffix_min = np.minimum.accumulate(slack[::-1])[::-1]
        agree_before = np.concatenate(([0], agree_cum[:-1]))
        kept_before = np.concatenate(([0], kept_cum[:-1]))
        ok = suffix_min >= agree_before - kept_before - 1e-9
        ok[: p_prev - 1] = False
        hits = np.flatnonzero(ok)
        if hits.size == 0:
            break
        p = int(hits[0]) + 1
        thresholds[p - 1 :] = eps
        kept_cum = np.concatenate(
            (kept_cum[: p - 1], kept_before[p - 1] + agree_cum[p - 1 :] - agree_before[p - 1])
        )
        schedule.append((float(eps), p))
        p_prev = p
    K = IndexSet.from_mask(dev < thresholds)
    start, end = cfg.window(n)
    in_tail = K.indices[K.indices >= start]
    tail_dev = float(dev[in_tail - 1].max()) if in_tail.size else math.nan
    return Witness(K, estimate_density(K, cfg), tail_dev, tuple(schedule), target)


@dataclass(frozen=True)
class RuleCheck:
    passed: bool
    first_violation: int | None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "result": "PASS" if self.passed else "FAIL",
            "first_violation": self.first_violation,
            "detail": self.detail,
        }


def _first_true(mask: np.ndarray) -> int | None:
    hits = np.flatnonzero(mask)
    return int(hits[0]) + 1 if hits.size else None


def _combined_rule(l, h, a, b, eps, sign) -> RuleCheck:
    if l.n != h.n:
        raise UsageError(f"length mismatch: {l.n} vs {h.n}")
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps}")
    combined = l.values + sign * h.values
    target = a + sign * b
    c = np.cumsum(np.abs(combined - target) >= eps)
    u = np.cumsum(np.abs(l.values - a) >= eps / 2)
    v = np.cumsum(np.abs(h.values - b) >= eps / 2)
    bad = _first_true(c > u + v)
    return RuleCheck(bad is None, bad, f"combined={int(c[-1])} u={int(u[-1])} v={int(v[-1])}")


def check_sum_rule(l, h, a: float, b: float, eps: float) -> RuleCheck:
    """Exceedance count of l + h at ε never exceeds the counts of l and h at ε/2."""
    return _combined_rule(l, h, a, b, eps, 1.0)


def check_diff_rule(l, h, a: float, b: float, eps: float) -> RuleCheck:
    return _combined_rule(l, h, a, b, eps, -1.0)


def check_scale_rule(l: SequencePrefix, a: float, k: float, eps: float) -> RuleCheck:
    """Exceedance sets are invariant under scaling: L(kl, ka, |k|ε) = L(l, a, ε)."""
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps}")
    if k == 0:
        scaled = exceedance_set(l.scaled(0.0), 0.0, eps)
        return RuleCheck(len(scaled) == 0, None if len(scaled) == 0 else int(scaled.indices[0]))
    lhs = exceedance_set(l.scaled(k), k * a, abs(k) * eps).mask()
    rhs = exceedance_set(l, a, eps).mask()
    bad = _first_true(lhs != rhs)
    return RuleCheck(bad is None, bad)


@dataclass(frozen=True)
class SqueezeCheck(RuleCheck):
    chain_holds: bool = True


def check_squeeze(
    l: SequencePrefix, h: SequencePrefix, k_seq: SequencePrefix, a: float, eps: float
) -> SqueezeCheck:
    """Count-level squeeze check for l ≤ h ≤ k.

    With u_n = #{i ≤ n : l_i - a > -ε}, v_n = #{i ≤ n : |h_i - a| < ε} and
    y_n = #{i ≤ n : k_i - a < ε}, the ordering forces v_n ≥ u_n + y_n - n.
    ``chain_holds`` additionally reports whether u_n ≤ v_n ≤ y_n held for
    every n; that chain is informative only and does not follow from the
    ordering.
    """
    if not (l.n == h.n == k_seq.n):
        raise UsageError("squeeze sequences must have equal length")
    if not eps > 0:
        raise UsageError(f"eps must be positive, got {eps}")
    below = np.flatnonzero(l.values > h.values)
    above = np.flatnonzero(h.values > k_seq.values)
    if below.size or above.size:
        first = int(min(np.concatenate((below, above)))) + 1
        raise UsageError(f"ordering l <= h <= k violated at index {first}")
    ns = np.arange(1, l.n + 1)
    u = np.cumsum(l.values - a > -eps)
    v = np.cumsum(np.abs(h.values - a) < eps)
    y = np.cumsum(k_seq.values - a < eps)
    bad = _first_true(v < u + y - ns)
    chain = bool(np.all(u <= v) and np.all(v <= y))
    return SqueezeCheck(
        bad is None, bad, f"u={int(u[-1])} v={int(v[-1])} y={int(y[-1])}", chain
    )


def check_dense_subsequence(
    l: SequencePrefix,
    h_indices: IndexSet,
    a: float,
    r: float,
    cfg: EstimatorConfig = DEFAULT_CONFIG,
) -> tuple[Verdict, Verdict]:
    """Verdicts for the whole sequence and for a statistically dense subsequence.

    Both are judged on the parent's ε grid.
    """
    dens = subsequence_density(l.n, h_indices, r, cfg)
    if not dens.is_statistically_dense:
        raise UsageError(
            f"subsequence is not statistically dense (density band "
            f"{dens.density.band[0]:.6g}..{dens.density.band[1]:.6g})"
        )
    cfg = replace(cfg, eps_grid=eps_grid_for(l.values, cfg))
    return is_r_stat_limit(l, a, r, cfg), is_r_stat_limit(l.subsequence(h_indices), a, r, cfg)
