import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from maitland.errors import DomainError
from maitland.series import (
    MasterParams,
    Reduction,
    Status,
    bessel_maitland,
    master_series,
    master_series_array,
    named_reduction,
    reduction_params,
)

from . import oracles

positive = st.floats(0.2, 4.0)


@st.composite
def master_params(draw, margin_min=0.05):
    eta = draw(st.floats(0.1, 3.0))
    p = draw(st.floats(0.2, 3.0))
    q = draw(st.floats(0.1, 3.0))
    assume(eta + p - q > margin_min)
    return MasterParams(eta=eta, beta=draw(positive), gamma=draw(positive), q=q, delta=draw(positive), p=p)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


@given(master_params())
def test_value_at_zero_is_leading_term(mp):
    r = master_series(mp, 0.0)
    assert r.status is Status.CONVERGED
    assert r.value == pytest.approx(1 / math.gamma(mp.beta), rel=1e-14)
    assert r.terms_used == 1


def test_exponential_and_cosh():
    assert master_series(MasterParams(1, 1), 1.0).value == pytest.approx(math.e, rel=1e-15)
    assert master_series(MasterParams(2, 1), 1.0).value == pytest.approx(1.5430806348152437, rel=1e-15)


def test_bessel_maitland_basic_is_cylinder_bessel():
    # sum (-1)^n / (n!)^2 = J_0(2), brute-forced by oracles-style exact partial sums
    r = named_reduction(Reduction.BM_BASIC, 1.0, mu=1.0, nu=0.0)
    assert r.value == pytest.approx(0.22389077914123567, rel=1e-14)
    assert named_reduction(Reduction.BM_BASIC, 0.0, mu=1.0, nu=0.0).value == 1.0


def test_bessel_maitland_with_unit_pochhammers_has_no_factorial():
    # gamma = delta = p = q = 1 cancels the Pochhammers: sum (-1)^n / Gamma(n + 1) = 1/e
    r = bessel_maitland(MasterParams(eta=1, beta=1), 1.0)
    assert r.value == pytest.approx(math.exp(-1), rel=1e-14)


@given(master_params(), st.floats(-3, 3))
def test_bessel_maitland_sign_relation(mp, z):
    assert bessel_maitland(mp, z) == master_series(mp, -z)


def test_named_examples():
    assert named_reduction("ML_1p", 2.0, alpha=1.0).value == pytest.approx(7.38905609893065, rel=1e-14)
    for z in (-2.0, -0.3, 0.7, 3.0):
        a = named_reduction("Prabhakar", z, alpha=1.7, beta=0.9, gamma=1.0).value
        b = named_reduction("ML_2p", z, alpha=1.7, beta=0.9).value
        assert rel(a, b) <= 1e-15


def test_salim_faraj_reduces_to_shukla_prajapati():
    sf = named_reduction("SalimFaraj", 0.8, alpha=1.3, beta=0.7, gamma=2.1, delta=1.0, p=1.0, q=1.5).value
    sp = named_reduction("ShuklaPrajapati", 0.8, alpha=1.3, beta=0.7, gamma=2.1, q=1.5).value
    assert rel(sf, sp) <= 1e-12
    # 30-digit brute-force sum
    assert rel(sf, 10.41107350502688) <= 1e-12


MAPPING = [
    ("ML_1p", {"alpha": 1.4}, MasterParams(1.4, 1.0)),
    ("ML_2p", {"alpha": 1.4, "beta": 0.6}, MasterParams(1.4, 0.6)),
    ("Prabhakar", {"alpha": 1.4, "beta": 0.6, "gamma": 2.0}, MasterParams(1.4, 0.6, gamma=2.0)),
    ("ShuklaPrajapati", {"alpha": 1.4, "beta": 0.6, "gamma": 2.0, "q": 1.5}, MasterParams(1.4, 0.6, 2.0, 1.5)),
    ("Salim", {"alpha": 1.4, "beta": 0.6, "gamma": 2.0, "delta": 3.0}, MasterParams(1.4, 0.6, 2.0, 1.0, 3.0)),
    (
        "SalimFaraj",
        {"alpha": 1.4, "beta": 0.6, "gamma": 2.0, "delta": 3.0, "p": 0.5, "q": 1.5},
        MasterParams(1.4, 0.6, 2.0, 1.5, 3.0, 0.5),
    ),
    ("BM_basic", {"mu": 1.4, "nu": 0.5}, MasterParams(1.4, 1.5, q=0.0)),
    ("BM_q", {"mu": 1.4, "nu": 0.5, "gamma": 2.0, "q": 1.5}, MasterParams(1.4, 1.5, 2.0, 1.5)),
    (
        "BM_ext",
        {"mu": 1.4, "nu": 0.5, "gamma": 2.0, "delta": 3.0, "p": 0.5, "q": 1.5},
        MasterParams(1.4, 1.5, 2.0, 1.5, 3.0, 0.5),
    ),
]


@pytest.mark.parametrize("name, args, expected", MAPPING)
def test_reduction_mapping_contract(name, args, expected):
    assert reduction_params(name, **args) == expected


def test_reduction_errors():
    with pytest.raises(DomainError):
        named_reduction("Wiman", 1.0, alpha=1.0)
    with pytest.raises(DomainError):
        named_reduction("ML_1p", 1.0, alpha=1.0, beta=2.0)
    with pytest.raises(DomainError):
        named_reduction("ML_2p", 1.0, alpha=1.0)
    with pytest.raises(DomainError):
        named_reduction("BM_basic", 1.0, mu=1.0, nu=-1.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(eta=-0.1, beta=1),
        dict(eta=1, beta=0),
        dict(eta=1, beta=1, gamma=0),
        dict(eta=1, beta=1, delta=-1),
        dict(eta=1, beta=1, p=0),
        dict(eta=1, beta=1, q=-1),
        dict(eta=0, beta=1, q=1, p=1),
        dict(eta=1, beta=math.nan),
    ],
)
def test_invalid_params(kwargs):
    with pytest.raises(DomainError):
        MasterParams(**kwargs)


def test_eta_zero_admitted_when_q_below_p():
    mp = MasterParams(eta=0, beta=2.0, gamma=1.0, q=1.0, delta=1.0, p=2.0)
    # sum n! z^n / (2n)! / Gamma(2)
    assert master_series(mp, 0.5).value == pytest.approx(oracles.master(0, 2, 1, 1, 1, 2, 0.5), rel=1e-13)


def test_domain_classification():
    negative = MasterParams(eta=1, beta=1, q=3)
    assert master_series(negative, 0.1).status is Status.OUTSIDE_DOMAIN
    disk = MasterParams(eta=1, beta=1, gamma=1, q=2, delta=1, p=1)
    assert disk.margin == 0 and disk.radius == pytest.approx(0.25)
    assert master_series(disk, 0.25).status is Status.OUTSIDE_DOMAIN
    assert master_series(disk, -0.3).status is Status.OUTSIDE_DOMAIN
    inside = master_series(disk, 0.2)
    assert inside.status is Status.CONVERGED
    assert inside.value == pytest.approx(oracles.master(1, 1, 1, 2, 1, 1, 0.2), rel=1e-12)


def test_max_terms_reached_near_disk_boundary():
    disk = MasterParams(eta=1, beta=1, gamma=1, q=2, delta=1, p=1)
    r = master_series(disk, 0.25 * (1 - 1e-5), tol=1e-15)
    assert r.status is Status.MAX_TERMS
    assert r.terms_used == 10_000


@pytest.mark.parametrize("tol", [0.0, 1e-16, 1e-2])
def test_tolerance_range(tol):
    with pytest.raises(DomainError):
        master_series(MasterParams(1, 1), 1.0, tol)


@given(master_params(), st.floats(-4, 4), st.sampled_from([1e-6, 1e-9, 1e-12]))
def test_tail_bound_honesty(mp, z, tol):
    coarse = master_series(mp, z, tol)
    assume(coarse.status is Status.CONVERGED)
    assert coarse.tail_estimate <= tol * max(1, abs(coarse.value))
    fine = master_series(mp, z, tol / 10)
    assert abs(fine.value - coarse.value) <= 10 * coarse.tail_estimate + 1e-15 * max(1, abs(coarse.value))


@pytest.mark.parametrize(
    "eta, beta, gamma, q, delta, p, z",
    [(1, 1, 1, 1, 1, 1, 2.0), (0.5, 1.2, 2.0, 1.0, 1.0, 1.0, 1.5), (1.3, 0.7, 2.1, 1.5, 1.0, 1.0, 0.8)],
)
def test_tail_estimate_bounds_true_error(eta, beta, gamma, q, delta, p, z):
    # positive z: terms decrease monotonically once small, so the geometric bound is a true bound
    r = master_series(MasterParams(eta, beta, gamma, q, delta, p), z, 1e-8)
    exact = oracles.master(eta, beta, gamma, q, delta, p, z)
    assert abs(exact - r.value) <= r.tail_estimate + 4e-16 * abs(exact)


@settings(max_examples=40)
@given(master_params(margin_min=0.5), st.floats(0.0, 3.0))
def test_against_high_precision_oracle(mp, z):
    exact = oracles.master(mp.eta, mp.beta, mp.gamma, mp.q, mp.delta, mp.p, z)
    assert master_series(mp, z).value == pytest.approx(exact, rel=1e-12)


def test_array_evaluation_matches_scalar():
    mp = MasterParams(eta=1.5, beta=0.8, gamma=2.5, q=2.0, delta=1.0, p=2.0)
    z = np.linspace(-0.5, 0.5, 41)
    vec = master_series_array(mp, z, 1e-14)
    scalar = np.array([master_series(mp, float(x)).value for x in z])
    np.testing.assert_allclose(vec, scalar, rtol=1e-13)
    assert np.all(master_series_array(mp, np.zeros(3)) == 1 / math.gamma(0.8))


def test_overflowing_terms_report_max_terms():
    # margin 1/8: terms grow for thousands of indices and leave the double range
    r = master_series(MasterParams(eta=1.0, beta=1.0, gamma=1.0, q=2.0, delta=1.0, p=1.125), 1.0)
    assert r.status is Status.MAX_TERMS


def test_large_index_terms_do_not_overflow():
    # Gamma(n + 1) overflows near n = 170; the ratio recurrence must not care
    r = named_reduction("ML_1p", 300.0, alpha=1.0)
    assert r.status is Status.CONVERGED
    assert r.value == pytest.approx(math.exp(300.0), rel=1e-12)


def test_catastrophic_cancellation_is_not_certified():
    # true value is about -0.1465, but sum |t_n| is about 6e29
    mp = MasterParams(eta=1.9846940180789323, beta=0.6972285817409977, gamma=1.9846940180789323,
                      q=1.9846940180789323, delta=0.203125, p=0.203125)
    r = master_series(mp, -2.25, 1e-6)
    assert r.status is Status.PRECISION_LOSS and not r.converged
    assert r.rounding_estimate > 1e13


def test_rounding_floor_of_alternating_exponential():
    r = master_series(MasterParams(1, 1), -5.0)
    assert r.status is Status.PRECISION_LOSS
    assert r.rounding_estimate == pytest.approx(2.0**-52 * math.exp(5), rel=1e-12)
    assert abs(r.value - math.exp(-5)) <= r.rounding_estimate
    assert master_series(MasterParams(1, 1), -5.0, 1e-12).converged
