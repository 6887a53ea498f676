"""Cesàro transform, partial means/variances, and the bounds they obey.

If a is an r-statistical limit of a sequence bounded by m, the partial means
stay within ``u = (m + |a|) r`` of a in the limsup sense and the partial
standard deviations within ``sqrt(p (2r + u))`` of 0, where
``p = max(m² + a², m + |a|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

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
)
from .fuzzy_limits import is_unbounded

# relative slack under which a negative running variance is rounding noise
FP_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class PartialStats:
    means: np.ndarray
    variances: np.ndarray
    std_devs: np.ndarray


def partial_stats(l: SequencePrefix) -> PartialStats:
    """Running mean and population variance in one Welford pass."""
    xs = l.values.tolist()
    n = len(xs)
    means = [0.0] * n
    variances = [0.0] * n
    mean = 0.0
    m2 = 0.0
    for i, x in enumerate(xs, start=1):
        delta = x - mean
        mean += delta / i
        m2 += delta * (x - mean)
        means[i - 1] = mean
        variances[i - 1] = m2 / i
    means_arr = np.array(means)
    var_arr = np.array(variances)
    scale = max(1.0, float(np.max(np.abs(l.values)))) ** 2
    if var_arr.min() < -FP_SLACK * scale:
        raise ArithmeticError("running variance went negative beyond rounding slack")
    var_arr = np.maximum(var_arr, 0.0)
    std_arr = np.sqrt(var_arr)
    for arr in (means_arr, var_arr, std_arr):
        arr.setflags(write=False)
    return PartialStats(means_arr, var_arr, std_arr)


def partial_means(l: SequencePrefix) -> np.ndarray:
    return partial_stats(l).means


def partial_variances(l: SequencePrefix) -> np.ndarray:
    return partial_stats(l).variances


def partial_std(l: SequencePrefix) -> np.ndarray:
    return partial_stats(l).std_devs


def moment_variances(l: SequencePrefix) -> np.ndarray:
    """σ²_n via the mean of squares minus the squared mean (no clamping)."""
    ns = np.arange(1, l.n + 1)
    mu = np.cumsum(l.values) / ns
    return np.cumsum(l.values**2) / ns - mu**2


def indicator_transform(K: IndexSet) -> np.ndarray:
    """Cesàro transform of the indicator of K: (1/n) Σ_{k≤n} χ_K(k)."""
    chi = np.zeros(K.horizon, dtype=np.float64)
    chi[K.indices - 1] = 1.0
    return np.cumsum(chi) / np.arange(1, K.horizon + 1)


def mean_bound_u(m: float, a: float, r: float) -> float:
    if m <= 0:
        raise UsageError(f"bound m must be positive, got {m}")
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    return (m + abs(a)) * r


def std_bound(m: float, a: float, r: float) -> float:
    u = mean_bound_u(m, a, r)
    p = max(m * m + a * a, m + abs(a))
    return math.sqrt(p * (2 * r + u))


@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    measured: DefectEstimate
    bound: float
    tol: float

    @property
    def margin(self) -> float:
        return self.bound + self.tol - self.measured.value

    def to_dict(self) -> dict:
        return {
            "result": "PASS" if self.passed else "FAIL",
            "measured": self.measured.to_dict(),
            "bound": self.bound,
            "tol": self.tol,
        }


def _require_bounded_limit(l, a, r, m, cfg) -> None:
    # imported here: stat_limits depends on this module
    from .stat_limits import is_r_stat_limit

    if m <= 0:
        raise UsageError(f"bound m must be positive, got {m}")
    over = int(np.count_nonzero(np.abs(l.values) >= m))
    if over or is_unbounded(l):
        raise UsageError(
            f"sequence is not bounded by m={m} ({over} value(s) with |a_i| >= m); "
            "the mean and deviation bounds are only valid for bounded sequences"
        )
    verdict = is_r_stat_limit(l, a, r, cfg)
    if verdict is not Verdict.ACCEPT:
        raise RejectedCandidate(f"{a} is not an accepted {r}-statistical limit ({verdict.value})")


def _mean_check(stats: PartialStats, a, r, m, cfg) -> BoundCheck:
    measured = tail_limsup(np.abs(stats.means - a), cfg)
    bound = mean_bound_u(m, a, r)
    return BoundCheck(measured.value <= bound + cfg.verdict_tol, measured, bound, cfg.verdict_tol)


def _std_check(stats: PartialStats, a, r, m, cfg) -> BoundCheck:
    measured = tail_limsup(stats.std_devs, cfg)
    bound = std_bound(m, a, r)
    return BoundCheck(measured.value <= bound + cfg.verdict_tol, measured, bound, cfg.verdict_tol)


def check_mean_bound(
    l: SequencePrefix, a: float, r: float, m: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> BoundCheck:
    """Tail limsup of |μ_n - a| against (m + |a|) r."""
    _require_bounded_limit(l, a, r, m, cfg)
    return _mean_check(partial_stats(l), a, r, m, cfg)


def check_std_bound(
    l: SequencePrefix, a: float, r: float, m: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> BoundCheck:
    _require_bounded_limit(l, a, r, m, cfg)
    return _std_check(partial_stats(l), a, r, m, cfg)


def check_bounds(
    l: SequencePrefix, a: float, r: float, m: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> tuple[BoundCheck, BoundCheck]:
    """Both checks with a single precondition test and a single running pass."""
    _require_bounded_limit(l, a, r, m, cfg)
    stats = partial_stats(l)
    return _mean_check(stats, a, r, m, cfg), _std_check(stats, a, r, m, cfg)
