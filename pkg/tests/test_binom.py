import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from kwisecover.binom import (
    BinomialModel,
    EXACT,
    LOGFLOAT,
    DomainError,
    WindowError,
    binom_pmf,
    dml_bounds,
    dml_sandwich_holds,
    dml_threshold,
    dml_window,
    exact_pmf_vector,
    hoeffding_bound,
    log_binom_pmf,
    log_binom_pmf_array,
    log_concave_sum_bound,
    upper_tail,
)


def test_pmf_examples():
    assert binom_pmf(BinomialModel(2), 1) == Fraction(1, 2)
    assert binom_pmf(BinomialModel(4), 2) == Fraction(3, 8)


def test_log_vs_exact_1000():
    exact = math.log(math.comb(1000, 500)) - 1000 * math.log(2)
    assert binom_pmf(BinomialModel(1000, LOGFLOAT), 500) == pytest.approx(exact, abs=1e-10)


def test_default_mode_switch():
    assert BinomialModel(5000).mode == EXACT
    assert BinomialModel(5001).mode == LOGFLOAT


def test_pmf_domain():
    with pytest.raises(DomainError):
        binom_pmf(BinomialModel(4), 5)


def test_exact_pmf_sums_to_one():
    for n in list(range(1, 60)) + [500, 2000]:
        assert sum(exact_pmf_vector(n)) == 1


def test_logfloat_normalisation():
    for n in (10, 1000, 10**5, 10**7):
        if n <= 10**5:
            logs = log_binom_pmf_array(n, np.arange(n + 1))
        else:
            # outside +-12 sd the mass is below 1e-30
            sd = int(12 * math.sqrt(n))
            logs = log_binom_pmf_array(n, np.arange(n // 2 - sd, n // 2 + sd + 1))
        top = logs.max()
        total = math.exp(top) * np.exp(logs - top).sum()
        assert total == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", [40, 1001, 10**6, 2**40, 10**20])
def test_log_pmf_against_mpmath(n):
    mpmath.mp.dps = 50
    for w in {n // 2, n // 2 + 7, n // 2 + int(3 * math.sqrt(n)), n // 3, n - 25, 3}:
        ref = mpmath.log(mpmath.binomial(n, w)) - n * mpmath.log(2)
        assert log_binom_pmf(n, w) == pytest.approx(float(ref), rel=1e-13, abs=1e-11)


def test_log_pmf_array_matches_scalar():
    n = 123457
    ws = np.array([0, 5, 19, 20, 21, 1000, n // 2, n - 3, n])
    arr = log_binom_pmf_array(n, ws)
    for w, v in zip(ws, arr):
        assert v == pytest.approx(log_binom_pmf(n, int(w)), rel=1e-13, abs=1e-12)


def test_upper_tail_examples():
    m = BinomialModel(4)
    assert upper_tail(m, 3) == Fraction(1, 16)
    assert upper_tail(m, 4) == 0
    m30 = BinomialModel(30)
    got = upper_tail(m30, 20, lambda w: (w - 15) ** 2)
    direct = sum(Fraction(math.comb(30, w) * (w - 15) ** 2, 2**30) for w in range(21, 31))
    assert got == direct


def test_upper_tail_negative_weight():
    with pytest.raises(DomainError):
        upper_tail(BinomialModel(10), 5, lambda w: -1)


def test_upper_tail_log_mode_matches_exact():
    exact = upper_tail(BinomialModel(300), 170, lambda w: w)
    logv = upper_tail(BinomialModel(300, LOGFLOAT), 170, lambda w: w)
    assert logv == pytest.approx(math.log(exact), abs=1e-10)


@given(st.integers(1, 400), st.data())
def test_tail_reconstructs_one(n, data):
    w0 = data.draw(st.integers(-1, n))
    m = BinomialModel(n)
    head = sum(exact_pmf_vector(n)[: w0 + 1]) if w0 >= 0 else 0
    assert upper_tail(m, w0) + head == 1


def test_dml_examples():
    n = 10**6
    lo, hi = dml_bounds(n, n // 2)
    assert lo == pytest.approx(1 / math.sqrt(2e6))
    assert hi == pytest.approx(1e-3)
    lo1, hi1 = dml_bounds(n, n // 2 + 1000)
    assert lo1 == pytest.approx(lo * math.exp(-2))
    assert hi1 == pytest.approx(hi * math.exp(-2))


def test_dml_window_error():
    n = 10**6
    with pytest.raises(WindowError):
        dml_bounds(n, n // 2 + int(dml_window(n)) + 1)


def test_dml_sandwich_at_1e6():
    ok, slack = dml_sandwich_holds(10**6, 5000)
    assert ok and slack > 0


def test_dml_threshold_is_measured():
    # recorded, not assumed: the smallest tested n from which the sandwich holds
    first = dml_threshold([2, 3, 4, 5, 6, 8, 10, 20, 100, 1000])
    assert first is not None
    ok, _ = dml_sandwich_holds(first)
    assert ok


def test_hoeffding_examples():
    assert hoeffding_bound(100, 50) == 1
    assert hoeffding_bound(100, 100) == pytest.approx(math.exp(-50))


def test_hoeffding_sampled_1e5():
    n = 10**5
    ws = np.linspace(0, n, 2001).astype(int)
    for w in ws:
        assert log_binom_pmf(n, int(w)) <= -2 * (w - n / 2) ** 2 / n


def test_log_concave_sum_bound_is_upper_and_tight():
    n = 4000
    f = lambda w: log_binom_pmf(n, w) + 5 * math.log(2 * w - n + 6)
    for w0 in (2000, 2100, 2300):
        exact = upper_tail(BinomialModel(n), w0 - 1, lambda w: (2 * w - n + 6) ** 5)
        bound = log_concave_sum_bound(f, w0, n, direct_max=10)
        assert bound >= math.log(exact)
        assert bound - math.log(exact) < 1e-2


def test_log_concave_sum_bound_with_interior_mode():
    n = 3000
    f = lambda w: log_binom_pmf(n, w) + 40 * math.log(w - 1400)
    exact = sum(Fraction(math.comb(n, w)) * (w - 1400) ** 40 for w in range(1401, n + 1)) / 2**n
    bound = log_concave_sum_bound(f, 1401, n, direct_max=10)
    assert math.log(exact) <= bound < math.log(exact) + 1e-2
