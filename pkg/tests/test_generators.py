import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzystat import UsageError
from fuzzystat import generators as gen


def test_simple_sets():
    assert list(gen.evens(9)) == [2, 4, 6, 8]
    assert list(gen.odds(9)) == [1, 3, 5, 7, 9]
    assert list(gen.powers_of_two(100)) == [1, 2, 4, 8, 16, 32, 64]
    assert list(gen.squares(50)) == [1, 4, 9, 16, 25, 36, 49]
    assert list(gen.powers_of_two(64))[-1] == 64


@given(st.integers(1, 10**12))
def test_digit_count(k):
    assert gen.digit_count(np.array([k]))[0] == len(str(k))


def test_spike():
    s = gen.spike_sequence(6)
    assert s.values.tolist() == [1, 2, 1, 4, 1, 6]


def test_convergent_profiles():
    s = gen.convergent_sequence(2.0, 4)
    assert s.values.tolist() == [3.0, 2.5, 2 + 1 / 3, 2.25]
    g = gen.convergent_sequence(0.0, 4, "geometric", 0.5)
    assert g.values.tolist() == [1.0, 0.5, 0.25, 0.125]
    with pytest.raises(UsageError):
        gen.convergent_sequence(0.0, 4, "geometric", 1.0)
    with pytest.raises(UsageError):
        gen.convergent_sequence(0.0, 4, "cubic")


def test_random_index_set_reproducible():
    a, b = gen.random_index_set(1000, 0.3, 5), gen.random_index_set(1000, 0.3, 5)
    assert a == b and a != gen.random_index_set(1000, 0.3, 6)
    assert abs(len(a) / 1000 - 0.3) < 0.06


def test_perturbation_bounded_by_harmonic():
    i = np.arange(1, 2001)
    p = gen.convergent_perturbation(2000)
    assert np.all(np.abs(p) <= 1 / i) and np.all(np.abs(p[30:]) < 1e-9)


@given(st.sampled_from([0.0, 0.1, 0.25, 1 / 3, 0.5, 0.9]), st.integers(1, 3000))
def test_deterministic_exception_count_exact(r, n):
    p = gen.planted_sequence(0.0, r, 1.0, n)
    # independent oracle: count of k ≤ n with floor(k r) > floor((k-1) r) telescopes to floor(n r)
    from fractions import Fraction

    assert len(p.exceptions) == math.floor(Fraction(repr(r)) * n)


@given(
    st.sampled_from([0.0, 1.0, -2.0, 0.3]),
    st.sampled_from([0.1, 0.25, 0.5]),
    st.integers(1, 4000),
    st.integers(0, 10**6),
)
def test_random_planted_properties(a, r, n, seed):
    m = abs(a) + 1
    p = gen.planted_sequence(a, r, m, n, seed=seed, mode="random")
    v = p.sequence.values
    assert np.all(np.abs(v) < m)
    assert len(p.exceptions) in (math.floor(n * r), math.floor(n * r) + 1)
    exc = p.exceptions.mask()
    gap = min(1.0, (m * (1 - 1e-6) + abs(a)) / 2)
    assert np.all(np.abs(v[exc] - a) >= gap - 1e-12)
    i = np.arange(1, n + 1)
    assert np.all(np.abs(v[~exc] - a) <= 1 / i[~exc])


def test_planted_validation():
    for kw in (dict(a=2.0, m=1.0), dict(r=1.0), dict(r=-0.1), dict(mode="weird")):
        args = dict(a=0.0, r=0.1, m=1.0, n=10) | kw
        with pytest.raises(UsageError):
            gen.planted_sequence(**args)


def test_planted_deterministic_values():
    p = gen.planted_sequence(0.0, 0.25, 1.0, 8)
    assert list(p.exceptions) == [4, 8]
    assert p.sequence[4] == pytest.approx(-1 + 1e-6)


def test_squeeze_triple_ordered():
    l, h, k, exc = gen.squeeze_triple(1.0, 0.25, 2.0, 500, seed=3)
    assert np.all(l.values <= h.values) and np.all(h.values <= k.values)
    assert len(exc) in (125, 126)


def test_rng_streams_independent():
    a = gen.rng_for(1, 0).random(4)
    assert np.array_equal(a, gen.rng_for(1, 0).random(4))
    assert not np.array_equal(a, gen.rng_for(1, 1).random(4))
