import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzystat import (
    UNBOUNDED,
    EstimatorConfig,
    IndexSet,
    OutOfEvidenceError,
    SequencePrefix,
    UsageError,
    Verdict,
    tail_liminf,
    tail_limsup,
)
from fuzzystat.core import grows_without_bound, threshold_verdict


class TestVerdict:
    def test_zones(self):
        assert threshold_verdict(0.5, 0.5, 1e-3) is Verdict.ACCEPT
        assert threshold_verdict(0.5009, 0.5, 1e-3) is Verdict.ACCEPT
        assert threshold_verdict(0.5015, 0.5, 1e-3) is Verdict.INCONCLUSIVE
        assert threshold_verdict(0.51, 0.5, 1e-3) is Verdict.REJECT

    def test_unbounded_rejects(self):
        assert threshold_verdict(UNBOUNDED, 1e9, 1e-3) is Verdict.REJECT

    def test_negative_r(self):
        with pytest.raises(UsageError):
            threshold_verdict(0.0, -0.1, 1e-3)

    @given(st.floats(0, 10), st.floats(0, 10), st.floats(0, 1))
    def test_monotone_in_r(self, d, r, tol):
        order = {Verdict.REJECT: 0, Verdict.INCONCLUSIVE: 1, Verdict.ACCEPT: 2}
        assert order[threshold_verdict(d, r, tol)] <= order[threshold_verdict(d, r + 1, tol)]


class TestSequencePrefix:
    def test_one_based(self):
        s = SequencePrefix([3.0, 4.0, 5.0])
        assert s[1] == 3.0 and s[3] == 5.0 and s.n == len(s) == 3
        with pytest.raises(IndexError):
            s[0]

    @pytest.mark.parametrize("bad", [[], [1.0, math.nan], [[1.0, 2.0]], [math.inf]])
    def test_rejects_bad_values(self, bad):
        with pytest.raises(UsageError):
            SequencePrefix(bad)

    def test_read_only_and_hashable(self):
        s = SequencePrefix([1.0, 2.0])
        with pytest.raises(ValueError):
            s.values[0] = 5
        assert s == SequencePrefix(np.array([1.0, 2.0])) and hash(s) == hash(SequencePrefix([1, 2]))

    def test_arithmetic(self):
        a, b = SequencePrefix([1, 2, 3]), SequencePrefix([1, 1, 1])
        assert (a + b).values.tolist() == [2, 3, 4]
        assert (a - b).values.tolist() == [0, 1, 2]
        assert a.scaled(-2).values.tolist() == [-2, -4, -6]
        with pytest.raises(UsageError):
            a + SequencePrefix([1.0])

    def test_subsequence(self):
        s = SequencePrefix([10, 20, 30, 40])
        assert s.subsequence(IndexSet([2, 4], 4)).values.tolist() == [20, 40]


class TestIndexSet:
    def test_validation(self):
        for idx, h in (([0, 1], 3), ([2, 1], 3), ([1, 5], 4), ([1, 1], 3)):
            with pytest.raises(UsageError):
                IndexSet(idx, h)
        with pytest.raises(UsageError):
            IndexSet([], 0)

    def test_restrict_beyond_horizon(self):
        with pytest.raises(OutOfEvidenceError):
            IndexSet([1, 2], 5).restrict(6)

    @given(st.sets(st.integers(1, 60)), st.sets(st.integers(1, 60)))
    def test_set_algebra_matches_python_sets(self, a, b):
        A, B = IndexSet.from_iterable(a, 60), IndexSet.from_iterable(b, 60)
        assert set(A.union(B)) == a | b
        assert set(A.intersection(B)) == a & b
        assert set(A.complement()) == set(range(1, 61)) - a
        assert A.issubset(B) == (a <= b)
        assert all((i in A) == (i in a) for i in range(0, 62))

    @given(st.lists(st.booleans(), min_size=1, max_size=50))
    def test_mask_roundtrip(self, bits):
        K = IndexSet.from_mask(bits)
        assert K.mask().tolist() == bits


class TestConfigAndTails:
    def test_window(self):
        assert EstimatorConfig().window(10) == (5, 10)
        assert EstimatorConfig(tail_fraction=0.9).window(10) == (1, 10)
        assert EstimatorConfig(tail_fraction=1.0).window(7) == (1, 7)
        assert EstimatorConfig().window(1) == (1, 1)

    @pytest.mark.parametrize(
        "kw",
        [dict(tail_fraction=0), dict(tail_fraction=1.5), dict(verdict_tol=-1), dict(eps_count=0),
         dict(eps_grid=()), dict(eps_grid=(0.1, 0.2)), dict(eps_grid=(1.0, -1.0)), dict(eps_min=0.0)],
    )
    def test_config_rejects(self, kw):
        with pytest.raises(UsageError):
            EstimatorConfig(**kw)

    def test_tails_against_slicing_oracle(self):
        xs = np.array([9, 1, 2, 7, 3, 4, 0, 5], dtype=float)
        hi, lo = tail_limsup(xs), tail_liminf(xs)
        tail = xs[3:]  # window 4..8
        assert (hi.value, lo.value) == (tail.max(), tail.min())
        assert (hi.window_start, hi.window_end) == (4, 8)

    def test_tail_rejects_nonfinite(self):
        with pytest.raises(UsageError):
            tail_limsup([1.0, math.inf])
        with pytest.raises(UsageError):
            tail_limsup([])

    def test_unbounded_serialization(self):
        hi = tail_limsup([1.0, 2.0])
        d = type(hi)(UNBOUNDED, 0, 0, 1, 2).to_dict()
        assert d["value"] == "UNBOUNDED" and hi.to_dict()["value"] == 2.0


class TestGrowth:
    def test_linear_growth(self):
        assert grows_without_bound(np.arange(1, 1001))

    def test_bounded(self):
        assert not grows_without_bound(np.sin(np.arange(1000)))
        assert not grows_without_bound(np.arange(1, 6))
        assert not grows_without_bound(np.zeros(100))
