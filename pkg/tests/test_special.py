import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from lfhh.errors import ConvergenceError, DomainError
from lfhh.special import check_alpha, gamma, gamma_ratio, lgamma, mittag_leffler, mittag_leffler_array

alphas = st.floats(min_value=0.01, max_value=1.0)


@pytest.mark.parametrize("x, expected", [(2.0, 1.0), (3.0, 2.0), (1.5, math.sqrt(math.pi) / 2)])
def test_gamma_spot_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-14, abs=1e-14)


@given(st.floats(min_value=0.05, max_value=60.0))
def test_gamma_matches_mpmath(x):
    assert gamma(x) == pytest.approx(float(mp.gamma(x)), rel=1e-13)
    assert lgamma(x) == pytest.approx(float(mp.loggamma(x)), rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, float("nan")])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)
    with pytest.raises(DomainError):
        lgamma(x)


def test_gamma_ratio_examples():
    assert gamma_ratio(1, 2, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert gamma_ratio(5, 5, 0.37) == 1.0
    assert gamma_ratio(1, 2, 0.5) == pytest.approx(0.886226925452758, rel=1e-14)


def test_gamma_ratio_negative_index():
    with pytest.raises(DomainError):
        gamma_ratio(-1, 2, 0.5)


@given(st.integers(0, 25), st.integers(0, 25), alphas)
def test_gamma_ratio_against_mpmath(j, k, alpha):
    assert gamma_ratio(j, k, alpha) == pytest.approx(float(oracles.ratio(j, k, alpha)), rel=1e-13)


@given(st.integers(0, 25), st.integers(0, 25), st.integers(0, 25), alphas)
def test_gamma_ratio_chain(i, j, k, alpha):
    chained = gamma_ratio(i, j, alpha) * gamma_ratio(j, k, alpha)
    assert chained == pytest.approx(gamma_ratio(i, k, alpha), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.0000001, 2.0])
def test_check_alpha_rejects(alpha):
    with pytest.raises(DomainError):
        check_alpha(alpha)


def test_mittag_leffler_examples():
    assert mittag_leffler(1.0, 1.0, tol=1e-14) == pytest.approx(math.e, rel=1e-14)
    assert mittag_leffler(0.5, 0.0, tol=1e-14) == 1.0
    assert abs(mittag_leffler(0.5, 1.0, tol=1e-12) - 5.008980) < 1e-5


@pytest.mark.parametrize("z", [-2.0, -0.5, 0.3, 1.0, 2.5, 4.0])
def test_mittag_leffler_half_erfc_identity(z):
    assert mittag_leffler(0.5, z) == pytest.approx(float(oracles.ml_half(z)), rel=1e-12)


@given(st.floats(min_value=0.2, max_value=1.0), st.floats(min_value=-1.5, max_value=3.0))
def test_mittag_leffler_series_oracle(alpha, z):
    ref = float(oracles.ml_series(alpha, z))
    assert mittag_leffler(alpha, z) == pytest.approx(ref, rel=1e-11, abs=1e-14)


@given(st.floats(min_value=-5.0, max_value=5.0))
def test_mittag_leffler_alpha_one_is_exp(z):
    # alternating sums for z < 0 carry an absolute error of order eps·e^|z|
    assert mittag_leffler(1.0, z) == pytest.approx(math.exp(z), rel=1e-13, abs=1e-14 * math.exp(abs(z)))


def test_mittag_leffler_array_matches_scalar():
    z = np.linspace(-2.0, 3.0, 41)
    for alpha in (0.3, 0.5, 1.0):
        arr = mittag_leffler_array(alpha, z)
        ref = np.array([mittag_leffler(alpha, v) for v in z])
        scale = np.array([mittag_leffler(alpha, abs(v)) for v in z])
        assert np.all(np.abs(arr - ref) <= 1e-13 * scale)


def test_mittag_leffler_overflow_is_reported():
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.5, 50.0)
    with pytest.raises(ConvergenceError):
        mittag_leffler_array(0.5, np.array([0.0, 50.0]))


def test_mittag_leffler_bad_tol():
    with pytest.raises(DomainError):
        mittag_leffler(0.5, 1.0, tol=0.0)
