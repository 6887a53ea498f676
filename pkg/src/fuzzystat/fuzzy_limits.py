"""r-limits of value sequences.

``a`` is an r-limit of the prefix when the tail limsup of ``|a_i - a|`` is at
most r. For real sequences that limsup equals ``max(Λ - a, a - λ)`` with Λ, λ
the tail max and min, so the set of r-limits is the interval [Λ - r, λ + r].
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_CONFIG,
    UNBOUNDED,
    DefectEstimate,
    EstimatorConfig,
    SequencePrefix,
    UsageError,
    Verdict,
    grows_without_bound,
    tail_liminf,
    tail_limsup,
    threshold_verdict,
)


@functools.lru_cache(maxsize=64)
def is_unbounded(l: SequencePrefix) -> bool:
    """Doubling-window growth test on deviations from the prefix median.

    Centering on the median rather than a candidate keeps the test
    candidate-independent: an unbounded sequence has no r-limit anywhere.
    """
    return grows_without_bound(l.values - np.median(l.values))


def r_limit_defect(
    l: SequencePrefix, a: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> DefectEstimate:
    dev = np.abs(l.values - a)
    est = tail_limsup(dev, cfg)
    if is_unbounded(l):
        return DefectEstimate(
            UNBOUNDED, est.band_low, est.band_high, est.window_start, est.window_end
        )
    return est


def is_r_limit(
    l: SequencePrefix, a: float, r: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> Verdict:
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    return threshold_verdict(r_limit_defect(l, a, cfg).value, r, cfg.verdict_tol)


@dataclass(frozen=True)
class RLimitInterval:
    low: float | None
    high: float | None
    r: float
    tail_max: float
    tail_min: float
    window_start: int
    window_end: int
    unbounded: bool = False

    @property
    def empty(self) -> bool:
        return self.low is None

    def __contains__(self, a: float) -> bool:
        return not self.empty and self.low <= a <= self.high

    def to_dict(self) -> dict:
        note = None
        if self.unbounded:
            note = "UNBOUNDED: sequence grows without bound, no r-limits"
        elif self.empty:
            note = "tail oscillation exceeds 2r"
        return {
            "r": self.r,
            "empty": self.empty,
            "low": self.low,
            "high": self.high,
            "tail_max": self.tail_max,
            "tail_min": self.tail_min,
            "window_start": self.window_start,
            "window_end": self.window_end,
            "note": note,
        }


def r_limit_interval(
    l: SequencePrefix, r: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> RLimitInterval:
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    hi = tail_limsup(l.values, cfg)
    lo = tail_liminf(l.values, cfg)
    common = dict(
        r=r,
        tail_max=hi.value,
        tail_min=lo.value,
        window_start=hi.window_start,
        window_end=hi.window_end,
    )
    if is_unbounded(l):
        return RLimitInterval(None, None, unbounded=True, **common)
    if hi.value - lo.value > 2 * r:
        return RLimitInterval(None, None, **common)
    return RLimitInterval(hi.value - r, lo.value + r, **common)
