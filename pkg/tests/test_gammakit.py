import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maitland.errors import DomainError, PoleError
from maitland.gammakit import (
    ONE,
    ZERO,
    SignedLog,
    delta_array,
    gamma_ratio,
    gauss_multiplication,
    gen_pochhammer,
    log_gamma,
    log_gamma_step,
    pochhammer,
)


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize(
    "x, log_abs",
    [(1.0, 0.0), (0.5, 0.5723649429247001), (5.0, math.log(24))],
)
def test_log_gamma_examples(x, log_abs):
    r = log_gamma(x)
    assert r.sign == 1
    assert r.log_abs == pytest.approx(log_abs, abs=1e-15)


@pytest.mark.parametrize(
    "x, expected",
    [(-0.5, -2 * math.sqrt(math.pi)), (-1.5, 4 * math.sqrt(math.pi) / 3), (-2.5, -8 * math.sqrt(math.pi) / 15)],
)
def test_log_gamma_negative_arguments(x, expected):
    assert rel(log_gamma(x).value(), expected) < 1e-14


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
def test_log_gamma_poles(x):
    with pytest.raises(PoleError):
        log_gamma(x)


@pytest.mark.parametrize("x", [math.inf, -math.inf, math.nan])
def test_log_gamma_rejects_nonfinite(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@given(st.floats(0.1, 170.0))
def test_log_gamma_accuracy(x):
    ref = mpmath.gamma(mpmath.mpf(x))
    assert float(abs(mpmath.mpf(log_gamma(x).value()) / ref - 1)) <= 1e-13


@given(st.floats(0.1, 50.0))
def test_gamma_recurrence(x):
    assert rel(log_gamma(x + 1).value(), x * log_gamma(x).value()) <= 1e-12


def test_signed_log_arithmetic():
    a, b = SignedLog.from_float(-3.0), SignedLog.from_float(0.5)
    assert (a * b).value() == pytest.approx(-1.5, rel=1e-15)
    assert (a / b).value() == pytest.approx(-6.0, rel=1e-15)
    assert (a * ZERO).sign == 0
    assert (a**2).sign == 1 and (a**3).sign == -1
    assert (ONE * a) == a
    with pytest.raises(ZeroDivisionError):
        a / ZERO
    with pytest.raises(ValueError):
        SignedLog(0.0, 2)


def test_signed_log_survives_overflow():
    big = log_gamma(300.0) / log_gamma(299.0)
    assert big.value() == pytest.approx(299.0, rel=1e-12)
    assert log_gamma(300.0).value() == math.inf


@pytest.mark.parametrize("l, n, expected", [(7.3, 0, 1.0), (-4.0, 0, 1.0), (3, 4, 360.0), (0.5, 2, 0.75)])
def test_pochhammer_examples(l, n, expected):
    assert pochhammer(l, n).value() == pytest.approx(expected, rel=1e-15)


def test_pochhammer_through_zero():
    assert pochhammer(-2.0, 3).sign == 0
    assert pochhammer(-2.0, 2).value() == pytest.approx(2.0)


@pytest.mark.parametrize("l, n", [(0.3, 40), (2.5, 100), (-3.5, 50)])
def test_pochhammer_gamma_ratio_path(l, n):
    ref = mpmath.rf(mpmath.mpf(l), n)
    assert float(abs(mpmath.mpf(pochhammer(l, n).value()) / ref - 1)) < 1e-12


@given(st.floats(-6.0, 6.0), st.integers(0, 60))
def test_pochhammer_recurrence(l, n):
    lhs = pochhammer(l, n + 1)
    rhs = pochhammer(l, n) * SignedLog.from_float(l + n)
    if rhs.sign == 0:
        assert lhs.sign == 0
    else:
        assert lhs.sign == rhs.sign
        assert abs(lhs.log_abs - rhs.log_abs) <= 1e-11 * max(1.0, abs(rhs.log_abs))


@pytest.mark.parametrize("g, q, n, expected", [(2, 1, 3, 24.0), (1, 2, 1, 2.0), (1.5, 0.5, 2, 1.5)])
def test_gen_pochhammer_examples(g, q, n, expected):
    assert gen_pochhammer(g, q, n).value() == pytest.approx(expected, rel=1e-12)


@given(st.floats(0.01, 20.0), st.integers(0, 80))
def test_gen_pochhammer_reduces_to_pochhammer(g, n):
    assert rel(gen_pochhammer(g, 1.0, n).value(), pochhammer(g, n).value()) <= 1e-12


@pytest.mark.parametrize("g, q", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -0.5)])
def test_gen_pochhammer_domain(g, q):
    with pytest.raises(DomainError):
        gen_pochhammer(g, q, 2)


def test_delta_array_examples():
    assert delta_array(2, 3).entries == (1.5, 2.0)
    assert delta_array(1, 0.7).entries == (0.7,)
    assert delta_array(3, 1).entries == pytest.approx((1 / 3, 2 / 3, 1.0))
    with pytest.raises(DomainError):
        delta_array(0, 1.0)
    with pytest.raises(DomainError):
        delta_array(1.5, 1.0)


@given(st.integers(1, 12), st.floats(-10.0, 10.0))
def test_delta_array_invariants(m, l):
    d = delta_array(m, l)
    assert len(d) == m
    assert all(e == (l + r) / m for r, e in enumerate(d))
    assert math.fsum(d) == pytest.approx(l + (m - 1) / 2, abs=1e-12 * max(1.0, abs(l)))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("l", [0.05, 0.5, 1.0, 2.3, 4.99])
def test_gauss_multiplication(k, n, l):
    direct = pochhammer(l, k * n).value()
    assert rel(gauss_multiplication(l, k, n).value(), direct) <= 1e-10


def test_log_gamma_step_matches_lgamma():
    for x, w in [(0.3, 1), (2.5, 2), (10.0, 0.5), (7.1, 3.7), (1e4, 8)]:
        assert log_gamma_step(x, w) == pytest.approx(math.lgamma(x + w) - math.lgamma(x), rel=1e-12, abs=1e-13)
    assert log_gamma_step(3.0, 0) == 0.0


def test_gamma_ratio():
    assert gamma_ratio([2.0, 1.0], [3.0]).value() == pytest.approx(0.5, rel=1e-15)


def test_log_gamma_tiny_argument():
    x = 2.225073858507e-311
    assert log_gamma(x).log_abs == pytest.approx(-math.log(x), rel=1e-15)
    assert pochhammer(x, 33).value() == pytest.approx(x * math.factorial(32), rel=1e-12)


@pytest.mark.parametrize("x", [4.0, 17.3, 250.5, 3000.0, 1e6])
@pytest.mark.parametrize("w", [0.3, 1.9375, 7.5])
def test_log_gamma_step_large_argument(x, w):
    exact = mpmath.loggamma(mpmath.mpf(x) + w) - mpmath.loggamma(x)
    assert abs(log_gamma_step(x, w) - float(exact)) <= 2e-15 * max(1.0, abs(float(exact)))
