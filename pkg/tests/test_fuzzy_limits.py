import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzystat import SequencePrefix, UsageError, Verdict
from fuzzystat import generators as gen
from fuzzystat.fuzzy_limits import is_r_limit, is_unbounded, r_limit_defect, r_limit_interval

values = st.lists(st.floats(-100, 100), min_size=1, max_size=80)


def test_spike_unbounded_everywhere():
    s = gen.spike_sequence(1000)
    assert is_unbounded(s)
    for a in (1.0, -5.0, 500.0):
        assert r_limit_defect(s, a).unbounded
        assert is_r_limit(s, a, 1e6) is Verdict.REJECT
    iv = r_limit_interval(s, 1.0)
    assert iv.empty and iv.unbounded and "UNBOUNDED" in iv.to_dict()["note"]


def test_alternating_sequence_interval():
    l = SequencePrefix(np.tile([1.0, -1.0], 50))
    assert r_limit_interval(l, 0.5).empty
    iv = r_limit_interval(l, 1.0)
    assert (iv.low, iv.high) == (0.0, 0.0)
    iv = r_limit_interval(l, 2.0)
    assert (iv.low, iv.high) == (-1.0, 1.0) and 0.3 in iv and 1.5 not in iv


def test_convergent_is_zero_limit():
    l = gen.convergent_sequence(3.0, 10_000)
    assert is_r_limit(l, 3.0, 0.0) is Verdict.ACCEPT
    assert is_r_limit(l, 3.1, 0.0) is Verdict.REJECT


@given(values, st.floats(-150, 150))
def test_defect_matches_direct_max(xs, a):
    l = SequencePrefix(xs)
    if is_unbounded(l):
        return
    n = len(xs)
    start = max(1, math.ceil(n / 2))
    oracle = max(abs(x - a) for x in xs[start - 1 :])
    assert r_limit_defect(l, a).value == pytest.approx(oracle)


@given(values, st.floats(0, 50))
def test_interval_membership_agrees_with_verdict(xs, r):
    l = SequencePrefix(xs)
    iv = r_limit_interval(l, r)
    if iv.empty:
        return
    for a in (iv.low, iv.high, 0.5 * (iv.low + iv.high)):
        assert is_r_limit(l, a, r) is Verdict.ACCEPT


def test_negative_r():
    l = SequencePrefix([1.0])
    with pytest.raises(UsageError):
        is_r_limit(l, 0.0, -1)
    with pytest.raises(UsageError):
        r_limit_interval(l, -1)
