"""Canonical index sets and sequences, plus seeded planted-density sequences.

Seeded generation uses counter-based Philox streams keyed by the seed, so
output depends only on (parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import IndexSet, SequencePrefix, UsageError

# exceptional values stay this far (relatively) inside the bound m
_INSET = 1e-6


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def _check_horizon(horizon: int) -> None:
    if horizon < 1:
        raise UsageError(f"horizon must be positive, got {horizon}")


def evens(horizon: int) -> IndexSet:
    _check_horizon(horizon)
    return IndexSet(np.arange(2, horizon + 1, 2), horizon)


def odds(horizon: int) -> IndexSet:
    _check_horizon(horizon)
    return IndexSet(np.arange(1, horizon + 1, 2), horizon)


def digit_count(k: np.ndarray) -> np.ndarray:
    """Base-ten digit counts of positive integers."""
    powers = 10 ** np.arange(1, 19, dtype=np.int64)
    return np.searchsorted(powers, k, side="right") + 1


def even_digit_evens(horizon: int) -> IndexSet:
    """Even k ≤ horizon whose base-ten representation has an even digit count."""
    _check_horizon(horizon)
    k = np.arange(2, horizon + 1, 2, dtype=np.int64)
    return IndexSet(k[digit_count(k) % 2 == 0], horizon)


def powers_of_two(horizon: int) -> IndexSet:
    _check_horizon(horizon)
    return IndexSet(np.left_shift(1, np.arange(horizon.bit_length(), dtype=np.int64)), horizon)


def squares(horizon: int) -> IndexSet:
    _check_horizon(horizon)
    return IndexSet(np.arange(1, math.isqrt(horizon) + 1, dtype=np.int64) ** 2, horizon)


def random_index_set(horizon: int, density: float, seed: int) -> IndexSet:
    """Bernoulli(density) membership per index."""
    _check_horizon(horizon)
    if not 0 <= density <= 1:
        raise UsageError(f"density must lie in [0, 1], got {density}")
    return IndexSet.from_mask(rng_for(seed, 1).random(horizon) < density)


def spike_sequence(n: int) -> SequencePrefix:
    """a_i = i for even i, 1 otherwise."""
    _check_horizon(n)
    i = np.arange(1, n + 1, dtype=np.float64)
    return SequencePrefix(np.where(i % 2 == 0, i, 1.0))


def convergent_sequence(
    a: float, n: int, profile: str = "1/i", ratio: float = 0.5
) -> SequencePrefix:
    """a_i = a + 1/i, or a + ratio**(i-1) for the geometric profile."""
    _check_horizon(n)
    i = np.arange(1, n + 1, dtype=np.float64)
    if profile == "1/i":
        return SequencePrefix(a + 1.0 / i)
    if profile == "geometric":
        if not 0 < abs(ratio) < 1:
            raise UsageError(f"geometric ratio must satisfy 0 < |ratio| < 1, got {ratio}")
        return SequencePrefix(a + ratio ** (i - 1))
    raise UsageError(f"unknown profile {profile!r}; expected '1/i' or 'geometric'")


@dataclass(frozen=True)
class PlantedSequence:
    sequence: SequencePrefix
    exceptions: IndexSet
    a: float
    r: float
    m: float


def _validate_planted(a, r, m, n, mode):
    if not m > 0 or not abs(a) < m:
        raise UsageError(f"need |a| < m, got a={a}, m={m}")
    if not 0 <= r < 1:
        raise UsageError(f"r must lie in [0, 1), got {r}")
    _check_horizon(n)
    if mode not in ("deterministic", "random"):
        raise UsageError(f"mode must be 'deterministic' or 'random', got {mode!r}")


def _exception_mask(r: float, n: int, phase: float | None) -> np.ndarray:
    i = np.arange(0, n + 1, dtype=np.int64)
    if phase is None:
        # exact arithmetic on the decimal value of r: |E_n| = floor(n r)
        frac = Fraction(repr(float(r)))
        if n * frac.numerator >= 2**63:
            i = i.astype(object)  # exact big-integer products instead of int64 overflow
        floors = np.asarray((i * frac.numerator) // frac.denominator, dtype=np.int64)
    else:
        floors = np.floor(i * r + phase).astype(np.int64)
    return floors[1:] > floors[:-1]


def convergent_perturbation(n: int) -> np.ndarray:
    """(-1)^i 2^{-i}: bounded by 1/i and below 1e-9 after 30 terms."""
    i = np.arange(1, n + 1)
    return np.where(i % 2 == 0, 1.0, -1.0) * np.ldexp(1.0, -np.minimum(i, 1100))


def planted_sequence(
    a: float,
    r: float,
    m: float,
    n: int,
    seed: int = 0,
    mode: str = "deterministic",
) -> PlantedSequence:
    """Sequence converging to ``a`` off an exception set of density ``r``.

    Deterministic mode puts the exceptions at {i : ⌊i r⌋ > ⌊(i-1) r⌋} and sets
    each to the far end of [-m', m'], m' = m (1 - 1e-6), from ``a``. Random
    mode shifts the exception pattern by a seeded phase (so |E_n| is ⌊n r⌋ or
    one more) and draws exceptional values uniformly from the points of
    [-m', m'] at distance ≥ min(1, (m' + |a|)/2) from ``a``.
    """
    _validate_planted(a, r, m, n, mode)
    bound = m * (1 - _INSET)
    values = a + convergent_perturbation(n)
    if mode == "deterministic":
        mask = _exception_mask(r, n, None)
        values[mask] = -bound if a >= 0 else bound
    else:
        rng = rng_for(seed)
        mask = _exception_mask(r, n, float(rng.random()))
        gap = min(1.0, (bound + abs(a)) / 2)
        left = max(0.0, (a - gap) + bound)
        right = max(0.0, bound - (a + gap))
        u = rng.random(int(mask.sum())) * (left + right)
        values[mask] = np.where(u < left, -bound + u, a + gap + (u - left))
    return PlantedSequence(SequencePrefix(values), IndexSet.from_mask(mask), a, r, m)


def squeeze_triple(
    a: float, r: float, m: float, n: int, seed: int = 0
) -> tuple[SequencePrefix, SequencePrefix, SequencePrefix, IndexSet]:
    """Ordered l ≤ h ≤ k sharing one exception set, all converging to ``a`` off it."""
    planted = planted_sequence(a, r, m, n, seed=seed, mode="random")
    spread = np.ldexp(1.0 + rng_for(seed, 2).random(n), -np.minimum(np.arange(1, n + 1), 1100))
    h = planted.sequence
    return (
        SequencePrefix(h.values - spread),
        h,
        SequencePrefix(h.values + spread),
        planted.exceptions,
    )
