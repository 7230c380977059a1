import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kampe import PoleError, gamma_ratio, log_pochhammer, pochhammer
from oracles import log_poch_exact, poch_direct

# 50-digit reference, Gamma(1.7)/Gamma(0.9)
GAMMA_RATIO_17_09 = 0.85028479120134564495


def test_pochhammer_order_zero():
    for a in (0.0, -3.0, 2.5, 17.0):
        assert pochhammer(a, 0) == 1.0


def test_pochhammer_small_integers():
    assert pochhammer(3.0, 4) == 360.0
    assert pochhammer(1.0, 6) == math.factorial(6)


def test_pochhammer_terminating_zero():
    assert pochhammer(-2.0, 5) == 0.0
    assert pochhammer(-2.0, 3) == 0.0
    assert pochhammer(-2.0, 2) == 2.0  # (-2)(-1)


def test_pochhammer_large_order_matches_direct():
    # straddles the direct-product / log-gamma switch
    for a in (0.3, 1.7, 4.2):
        for n in (31, 32, 33, 60):
            assert pochhammer(a, n) == pytest.approx(poch_direct(a, n), rel=1e-13)


def test_log_pochhammer_consistency():
    logmag, sign = log_pochhammer(3.0, 4)
    assert sign == 1
    assert logmag == pytest.approx(math.log(360.0), rel=1e-14)


def test_log_pochhammer_zero_case():
    logmag, sign = log_pochhammer(-2.0, 5)
    assert sign == 0 and logmag == -math.inf


def test_log_pochhammer_half_200_vs_exact_product():
    logmag, sign = log_pochhammer(0.5, 200)
    assert sign == 1
    assert logmag == pytest.approx(log_poch_exact(1, 2, 200), rel=1e-13)


def test_log_pochhammer_negative_base_sign():
    # (-2.5)_3 = (-2.5)(-1.5)(-0.5) = -1.875
    logmag, sign = log_pochhammer(-2.5, 3)
    assert sign == -1
    assert logmag == pytest.approx(math.log(1.875), rel=1e-13)
    logmag, sign = log_pochhammer(-2.5, 40)
    assert sign * math.exp(logmag) == pytest.approx(poch_direct(-2.5, 40), rel=1e-12)


def test_gamma_ratio_basic():
    assert gamma_ratio(5.0, 3.0) == pytest.approx(12.0, rel=1e-14)
    assert gamma_ratio(1.0, 1.0) == 1.0
    assert gamma_ratio(1.7, 0.9) == pytest.approx(GAMMA_RATIO_17_09, rel=1e-13)


def test_gamma_ratio_negative_arguments():
    # Gamma(-0.5) = -2 sqrt(pi), Gamma(0.5) = sqrt(pi)
    assert gamma_ratio(-0.5, 0.5) == pytest.approx(-2.0, rel=1e-13)


def test_gamma_ratio_poles():
    with pytest.raises(PoleError):
        gamma_ratio(0.0, 1.0)
    with pytest.raises(PoleError):
        gamma_ratio(1.0, -3.0)


@given(st.floats(-5.0, 5.0).filter(lambda a: abs(a - round(a)) > 1e-6),
       st.integers(0, 50))
@settings(max_examples=60, deadline=None)
def test_pochhammer_recurrence(a, n):
    lhs = pochhammer(a, n + 1)
    rhs = pochhammer(a, n) * (a + n)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-280)


@given(st.sampled_from([0.3, 1.7, 4.2]), st.integers(0, 30))
@settings(max_examples=40, deadline=None)
def test_pochhammer_vs_gamma_ratio(a, n):
    assert pochhammer(a, n) == pytest.approx(gamma_ratio(a + n, a), rel=1e-12)


@given(st.floats(-8.0, 8.0), st.integers(0, 80))
@settings(max_examples=60, deadline=None)
def test_log_pochhammer_agrees_with_pochhammer(a, n):
    p = pochhammer(a, n)
    logmag, sign = log_pochhammer(a, n)
    if p == 0.0:
        assert sign == 0
    elif math.isfinite(p) and p != 0.0:
        assert sign == (1 if p > 0 else -1)
        assert logmag == pytest.approx(math.log(abs(p)), rel=1e-12, abs=1e-12)
