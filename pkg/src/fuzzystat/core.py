"""Shared domain types and the tail estimators used by every other module.

All quantities here are finite-prefix surrogates: a "limsup" is the maximum of
a statistic over the trailing window of the prefix, never a claim about the
infinite sequence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Distinguished defect value for statistics that grow without bound.
UNBOUNDED = math.inf


class UsageError(ValueError):
    """Invalid arguments or violated preconditions of an operation."""


class OutOfEvidenceError(UsageError):
    """A query reaches past the horizon up to which membership is known."""


class RejectedCandidate(UsageError):
    """An operation requires an accepted limit candidate and did not get one."""


class Verdict(str, enum.Enum):
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"
    INCONCLUSIVE = "INCONCLUSIVE"


def threshold_verdict(defect: float, r: float, tol: float) -> Verdict:
    """Compare a defect against the fuzziness level ``r``.

    ``defect <= r + tol`` accepts. Defects exceeding that by at most one more
    ``tol`` are too close to the threshold to call and come back
    INCONCLUSIVE; anything larger is rejected. An UNBOUNDED defect always
    rejects.
    """
    if r < 0:
        raise UsageError(f"fuzziness level must be non-negative, got {r}")
    if math.isinf(defect):
        return Verdict.REJECT
    if defect <= r + tol:
        return Verdict.ACCEPT
    if defect <= r + 2 * tol:
        return Verdict.INCONCLUSIVE
    return Verdict.REJECT


@dataclass(frozen=True, eq=False)
class SequencePrefix:
    """Finite prefix a_1..a_N of a real sequence (1-based in every API)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 1:
            raise UsageError("sequence values must be one-dimensional")
        if arr.size == 0:
            raise UsageError("sequence prefix must contain at least one value")
        bad = int(np.count_nonzero(~np.isfinite(arr)))
        if bad:
            raise UsageError(f"sequence contains {bad} non-finite value(s)")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> float:
        """1-based element access."""
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside 1..{self.n}")
        return float(self.values[i - 1])

    def __eq__(self, other):
        if not isinstance(other, SequencePrefix):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def subsequence(self, idx: IndexSet) -> SequencePrefix:
        """Values at the indices of ``idx``, re-indexed from 1."""
        if idx.horizon > self.n:
            raise UsageError(
                f"index set horizon {idx.horizon} exceeds sequence length {self.n}"
            )
        if len(idx) == 0:
            raise UsageError("cannot take an empty subsequence")
        return SequencePrefix(self.values[idx.indices - 1])

    def __add__(self, other: SequencePrefix) -> SequencePrefix:
        _check_same_length(self, other)
        return SequencePrefix(self.values + other.values)

    def __sub__(self, other: SequencePrefix) -> SequencePrefix:
        _check_same_length(self, other)
        return SequencePrefix(self.values - other.values)

    def scaled(self, k: float) -> SequencePrefix:
        return SequencePrefix(k * self.values)


def _check_same_length(a: SequencePrefix, b: SequencePrefix) -> None:
    if a.n != b.n:
        raise UsageError(f"length mismatch: {a.n} vs {b.n}")


@dataclass(frozen=True, eq=False)
class IndexSet:
    """Realization of K ⊆ N known up to ``horizon``.

    ``indices`` are strictly increasing positive integers, all ≤ horizon.
    """

    indices: np.ndarray
    horizon: int

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64, copy=True).reshape(-1)
        horizon = int(self.horizon)
        if horizon < 1:
            raise UsageError(f"horizon must be positive, got {horizon}")
        if idx.size:
            if idx[0] < 1:
                raise UsageError("indices must be positive")
            if idx[-1] > horizon:
                raise UsageError(f"index {idx[-1]} exceeds horizon {horizon}")
            if np.any(np.diff(idx) <= 0):
                raise UsageError("indices must be strictly increasing")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "horizon", horizon)

    @classmethod
    def from_mask(cls, mask: Sequence[bool] | np.ndarray) -> IndexSet:
        """Build from a membership mask where ``mask[i-1]`` says whether i ∈ K."""
        mask = np.asarray(mask, dtype=bool)
        return cls(np.flatnonzero(mask) + 1, mask.size)

    @classmethod
    def from_iterable(cls, indices: Iterable[int], horizon: int) -> IndexSet:
        return cls(np.array(sorted(set(indices)), dtype=np.int64), horizon)

    @classmethod
    def full(cls, horizon: int) -> IndexSet:
        return cls(np.arange(1, horizon + 1), horizon)

    @classmethod
    def empty(cls, horizon: int) -> IndexSet:
        return cls(np.zeros(0, dtype=np.int64), horizon)

    def mask(self) -> np.ndarray:
        out = np.zeros(self.horizon, dtype=bool)
        out[self.indices - 1] = True
        return out

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return (int(i) for i in self.indices)

    def __contains__(self, i) -> bool:
        pos = np.searchsorted(self.indices, i)
        return bool(pos < self.indices.size and self.indices[pos] == i)

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.horizon == other.horizon and np.array_equal(
            self.indices, other.indices
        )

    def __hash__(self):
        return hash((self.horizon, self.indices.tobytes()))

    def __repr__(self):
        head = ", ".join(str(i) for i in self.indices[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"IndexSet([{head}{more}], size={len(self)}, horizon={self.horizon})"

    def restrict(self, n: int) -> IndexSet:
        """K_n, the members not exceeding n."""
        if n > self.horizon:
            raise OutOfEvidenceError(f"n={n} exceeds horizon {self.horizon}")
        cut = np.searchsorted(self.indices, n, side="right")
        return IndexSet(self.indices[:cut], n)

    def union(self, other: IndexSet) -> IndexSet:
        h = min(self.horizon, other.horizon)
        return IndexSet(np.union1d(self.restrict(h).indices, other.restrict(h).indices), h)

    def intersection(self, other: IndexSet) -> IndexSet:
        h = min(self.horizon, other.horizon)
        return IndexSet(
            np.intersect1d(self.restrict(h).indices, other.restrict(h).indices), h
        )

    def complement(self) -> IndexSet:
        return IndexSet.from_mask(~self.mask())

    def issubset(self, other: IndexSet) -> bool:
        return bool(np.isin(self.indices, other.indices).all())


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs shared by every limsup/density estimator.

    ``eps_grid`` pins the ε values explicitly. When it is None the grid is
    derived from the data: ``eps_count`` values halving down from
    ``eps_max`` (default: half the tail range), or log-spaced down to
    ``eps_min`` when that is given.
    """

    tail_fraction: float = 0.5
    eps_grid: tuple[float, ...] | None = None
    verdict_tol: float = 1e-3
    eps_count: int = 20
    eps_max: float | None = None
    eps_min: float | None = None

    def __post_init__(self):
        if not 0 < self.tail_fraction <= 1:
            raise UsageError(f"tail_fraction must lie in (0, 1], got {self.tail_fraction}")
        if self.verdict_tol < 0:
            raise UsageError("verdict_tol must be non-negative")
        if self.eps_count < 1:
            raise UsageError("eps_count must be at least 1")
        for name in ("eps_max", "eps_min"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise UsageError(f"{name} must be positive, got {v}")
        if self.eps_grid is not None:
            grid = tuple(float(e) for e in self.eps_grid)
            if not grid:
                raise UsageError("eps_grid must not be empty")
            if any(not e > 0 for e in grid):
                raise UsageError("eps_grid entries must be positive")
            if any(b >= a for a, b in zip(grid, grid[1:])):
                raise UsageError("eps_grid must be strictly decreasing")
            object.__setattr__(self, "eps_grid", grid)

    def window(self, n: int) -> tuple[int, int]:
        """1-based inclusive tail window ⌈(1−w)·n⌉..n, never empty."""
        if n < 1:
            raise UsageError("window of an empty prefix")
        # round() guards against 1 - 0.9 = 0.09999999999999998 style drift
        start = math.ceil(round((1.0 - self.tail_fraction) * n, 9))
        return max(1, start), n


DEFAULT_CONFIG = EstimatorConfig()


@dataclass(frozen=True)
class DefectEstimate:
    """A limsup/liminf-type estimate together with the evidence behind it."""

    value: float
    band_low: float
    band_high: float
    window_start: int
    window_end: int

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.value)

    @property
    def width(self) -> float:
        return self.band_high - self.band_low

    def to_dict(self) -> dict:
        return {
            "value": "UNBOUNDED" if self.unbounded else float(self.value),
            "band_low": float(self.band_low),
            "band_high": float(self.band_high),
            "window_start": int(self.window_start),
            "window_end": int(self.window_end),
        }


def _tail(xs, cfg: EstimatorConfig) -> tuple[np.ndarray, int, int]:
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 1 or xs.size == 0:
        raise UsageError("tail estimator needs a non-empty one-dimensional input")
    if not np.all(np.isfinite(xs)):
        raise UsageError("tail estimator input must be finite")
    start, end = cfg.window(xs.size)
    return xs[start - 1 : end], start, end


def tail_limsup(xs, cfg: EstimatorConfig = DEFAULT_CONFIG) -> DefectEstimate:
    """Max of ``xs`` over the trailing window; the band spans the window's range."""
    tail, start, end = _tail(xs, cfg)
    hi, lo = float(tail.max()), float(tail.min())
    return DefectEstimate(hi, lo, hi, start, end)


def tail_liminf(xs, cfg: EstimatorConfig = DEFAULT_CONFIG) -> DefectEstimate:
    tail, start, end = _tail(xs, cfg)
    hi, lo = float(tail.max()), float(tail.min())
    return DefectEstimate(lo, lo, hi, start, end)


def grows_without_bound(stat, factor: float = 2.0) -> bool:
    """Doubling-window growth test on a non-negative statistic.

    Fires when the max over (N/2, N] is at least ``factor`` times the max over
    (N/4, N/2], and that in turn is at least ``factor`` times the max over
    (N/8, N/4]. Needs N ≥ 8 and a strictly positive innermost max.
    """
    stat = np.abs(np.asarray(stat, dtype=np.float64))
    n = stat.size
    if n < 8:
        return False
    b1, b2, b3 = n // 2, n // 4, n // 8
    m1 = stat[b1:].max()
    m2 = stat[b2:b1].max()
    m3 = stat[b3:b2].max()
    return bool(m3 > 0 and m2 >= factor * m3 and m1 >= factor * m2)
