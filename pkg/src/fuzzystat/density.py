"""Asymptotic density and asymptotic r-density of index sets.

Everything is counting on an explicit :class:`~fuzzystat.core.IndexSet`; the
r-density test treats x as an r-density of K when the tail limsup of
``|(1/n)|K_n| - x|`` is at most r.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_CONFIG,
    DefectEstimate,
    EstimatorConfig,
    IndexSet,
    OutOfEvidenceError,
    UsageError,
    Verdict,
    tail_liminf,
    tail_limsup,
    threshold_verdict,
)


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """Prefix counts |K_n| and ratios |K_n|/n for n = 1..horizon."""

    counts: np.ndarray
    ratios: np.ndarray

    @property
    def horizon(self) -> int:
        return int(self.counts.size)

    def ratio_at(self, n: int) -> float:
        return float(self.ratios[n - 1])


@dataclass(frozen=True)
class DensityEstimate:
    upper: DefectEstimate
    lower: DefectEstimate
    exists: bool
    value: float | None

    @property
    def band(self) -> tuple[float, float]:
        return self.lower.value, self.upper.value

    @property
    def width(self) -> float:
        return self.upper.value - self.lower.value

    def to_dict(self) -> dict:
        return {
            "verdict": "EXISTS" if self.exists else "DOES_NOT_EXIST",
            "value": self.value,
            "limsup": self.upper.to_dict(),
            "liminf": self.lower.to_dict(),
        }


def prefix_count(K: IndexSet, n: int) -> int:
    """|K_n|."""
    if n < 0:
        raise UsageError("n must be non-negative")
    if n > K.horizon:
        raise OutOfEvidenceError(f"n={n} exceeds horizon {K.horizon}")
    return int(np.searchsorted(K.indices, n, side="right"))


def density_profile(K: IndexSet) -> DensityProfile:
    ns = np.arange(1, K.horizon + 1, dtype=np.int64)
    counts = np.searchsorted(K.indices, ns, side="right").astype(np.int64)
    ratios = counts / ns
    counts.setflags(write=False)
    ratios.setflags(write=False)
    return DensityProfile(counts, ratios)


def estimate_density(K: IndexSet, cfg: EstimatorConfig = DEFAULT_CONFIG) -> DensityEstimate:
    """Tail band of the density ratios; the density "exists" when the band is
    no wider than ``cfg.verdict_tol``."""
    ratios = density_profile(K).ratios
    upper = tail_limsup(ratios, cfg)
    lower = tail_liminf(ratios, cfg)
    exists = upper.value - lower.value <= cfg.verdict_tol
    value = 0.5 * (upper.value + lower.value) if exists else None
    return DensityEstimate(upper, lower, exists, value)


def density_defect(K: IndexSet, x: float, cfg: EstimatorConfig = DEFAULT_CONFIG) -> DefectEstimate:
    """Smallest r (up to the tail window) for which x is an r-density of K."""
    return tail_limsup(np.abs(density_profile(K).ratios - x), cfg)


def is_r_density(
    K: IndexSet, x: float, r: float, cfg: EstimatorConfig = DEFAULT_CONFIG
) -> Verdict:
    if r < 0:
        raise UsageError(f"r must be non-negative, got {r}")
    return threshold_verdict(density_defect(K, x, cfg).value, r, cfg.verdict_tol)


@dataclass(frozen=True)
class SubsequenceDensity:
    density: DensityEstimate
    defect_to_one: DefectEstimate
    r_verdict: Verdict
    is_statistically_dense: bool


def subsequence_density(
    parent_len: int,
    h_indices: IndexSet,
    r: float = 0.0,
    cfg: EstimatorConfig = DEFAULT_CONFIG,
) -> SubsequenceDensity:
    """Density of a subsequence measured through its index set in the parent.

    ``r_verdict`` says whether 1 is an r-density of the index set; the
    subsequence is statistically dense when the ordinary density exists and
    equals 1 within tolerance.
    """
    if h_indices.horizon != parent_len:
        raise UsageError(
            f"index set horizon {h_indices.horizon} differs from parent length {parent_len}"
        )
    if len(h_indices) and h_indices.indices[-1] > parent_len:
        raise UsageError("subsequence indices exceed the parent length")
    est = estimate_density(h_indices, cfg)
    defect = density_defect(h_indices, 1.0, cfg)
    dense = est.exists and abs(est.value - 1.0) <= cfg.verdict_tol
    verdict = threshold_verdict(defect.value, r, cfg.verdict_tol)
    return SubsequenceDensity(est, defect, verdict, dense)
