import math

import numpy as np
import pytest
from scipy.integrate import quad

from rspmetric import (
    NTooSmallError,
    ParameterOutOfRangeError,
    ball_tail,
    cluster_scale,
    diameter_tail,
    evaluate,
    exp_sum_cdf,
    harmonic,
    janson_lower_tail,
    kmedian_order_pdf,
    sm_tail,
    tau_cdf_bounds,
    tau_expectation_bounds,
)


# -- harmonic -----------------------------------------------------------------


@pytest.mark.parametrize("n,value", [(0, 0.0), (1, 1.0), (4, 25 / 12)])
def test_harmonic_small_values(n, value):
    assert harmonic(n) == pytest.approx(value, abs=1e-15)


def test_harmonic_rejects_negative():
    with pytest.raises(ValueError):
        harmonic(-1)


# -- exponential sum CDF -------------------------------------------------------


def test_exp_sum_cdf_examples():
    assert exp_sum_cdf(1.0, 1, math.log(2)) == pytest.approx(0.5, abs=1e-15)
    assert exp_sum_cdf(3.0, 7, 0.0) == 0.0
    assert exp_sum_cdf(2.0, 3, 1.0) == pytest.approx(0.6464623147796981, abs=1e-15)


def test_exp_sum_cdf_monte_carlo_cross_check():
    """The closed form agrees with direct simulation of the sum."""
    rng = np.random.default_rng(42)
    x = sum(rng.exponential(1.0 / (2.0 * i), size=100_000) for i in (1, 2, 3))
    assert abs((x <= 1.0).mean() - exp_sum_cdf(2.0, 3, 1.0)) < 0.01


def test_exp_sum_cdf_is_a_distribution():
    grid = np.linspace(0.0, 50.0, 60)
    vals = [exp_sum_cdf(0.7, 4, a) for a in grid]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(1.0, abs=1e-9)
    assert all(0.0 <= v <= 1.0 for v in vals)


def test_exp_sum_cdf_validates():
    for bad in [(0.0, 1, 1.0), (1.0, 0, 1.0), (1.0, 1, -0.5)]:
        with pytest.raises(ValueError):
            exp_sum_cdf(*bad)


# -- expectation bracket --------------------------------------------------------


def test_tau_expectation_examples():
    assert tau_expectation_bounds(9, 1, 0.4, 0.9) == (0.0, 0.0)
    assert tau_expectation_bounds(2, 2, 1.0, 1.0) == (1.0, 1.0)
    lo, hi = tau_expectation_bounds(5, 5, 0.5, 1.0)
    assert lo == pytest.approx(2 * (25 / 12) / 5, abs=1e-15)
    assert hi == pytest.approx(2 * 2 * (25 / 12) / 5, abs=1e-15)


def test_tau_expectation_validates():
    with pytest.raises(ValueError):
        tau_expectation_bounds(5, 6, 0.5, 1.0)
    with pytest.raises(ValueError):
        tau_expectation_bounds(5, 3, 0.9, 0.5)


# -- CDF bracket ----------------------------------------------------------------


def test_tau_cdf_bounds_examples():
    assert tau_cdf_bounds(3.7, 10, 1, 0.5, 1.0) == (1.0, 1.0)
    assert tau_cdf_bounds(0.0, 10, 4, 0.5, 1.0) == (0.0, 0.0)
    lo, hi = tau_cdf_bounds(0.5, 10, 5, 0.5, 1.0)
    assert lo == pytest.approx(0.25915776787768136, abs=1e-15)
    assert hi == pytest.approx(0.9733193900341046, abs=1e-15)


def test_tau_cdf_lower_never_exceeds_upper():
    for n in (5, 12, 40):
        for k in (1, 2, n // 2, n):
            for x in (0.0, 0.05, 0.3, 1.0, 5.0):
                for alpha, beta in ((0.3, 0.9), (0.5, 0.5), (1.0, 1.0)):
                    lo, hi = tau_cdf_bounds(x, n, k, alpha, beta)
                    assert 0.0 <= lo <= hi <= 1.0


# -- tail bounds ----------------------------------------------------------------


def test_diameter_tail_examples():
    assert diameter_tail(8.0, 50) == 1.0  # exponent 0, clamped
    assert diameter_tail(12.0, 10) == pytest.approx(0.1, abs=1e-15)
    assert diameter_tail(16.0, 10) == pytest.approx(0.01, abs=1e-15)


def test_ball_tail_examples():
    threshold, prob = ball_tail(0.0, 10, 0.7)
    assert (threshold, prob) == (1.0, 1.0)
    threshold, prob = ball_tail(0.5, 20, 1.0)  # alpha*delta*n = 10
    assert threshold == pytest.approx(math.exp(2.0), abs=1e-12)
    assert prob == pytest.approx(math.exp(-2.0), abs=1e-15)
    threshold, _ = ball_tail(100.0, 20, 1.0)
    assert threshold == 10.5  # saturates at (n+1)/2


def test_ball_tail_needs_five_vertices():
    with pytest.raises(NTooSmallError):
        ball_tail(0.5, 4, 1.0)


def test_cluster_scale_examples():
    assert cluster_scale(0.0, 10, 0.5) == (1.0, 10.0)
    s, scale = cluster_scale(1000.0, 10, 0.5)
    assert (s, scale) == (5.5, 10 / 5.5)
    s, scale = cluster_scale(1.0, 20, 0.5)
    assert s == pytest.approx(math.exp(2.0), abs=1e-12)
    assert scale == pytest.approx(20 / math.exp(2.0), abs=1e-12)


def test_janson_lower_tail():
    assert janson_lower_tail(1.0, 5.0, 2.0) == 1.0
    assert janson_lower_tail(0.5, 5.0, 2.0) == pytest.approx(0.14493472568611, abs=1e-15)
    assert janson_lower_tail(1e-9, 5.0, 2.0) < 1e-30
    with pytest.raises(ParameterOutOfRangeError):
        janson_lower_tail(1.5, 5.0, 2.0)
    with pytest.raises(ParameterOutOfRangeError):
        janson_lower_tail(0.0, 5.0, 2.0)


def test_sm_tail():
    phi = 0.5
    assert sm_tail(phi, 2 * phi**2 * math.exp(-2.0), 20) == pytest.approx(1.0, abs=1e-12)
    assert sm_tail(0.5, 0.05, 20) == pytest.approx(0.04851651954097914, abs=1e-15)
    assert sm_tail(0.5, 1e-12, 20) < 1e-100
    with pytest.raises(ParameterOutOfRangeError):
        sm_tail(0.999, 0.01, 20)  # phi beyond (n-1)/n
    with pytest.raises(ParameterOutOfRangeError):
        sm_tail(0.5, 0.5, 20)  # c beyond 2 phi^2 / e


def test_sm_tail_clamps_in_vacuous_regime():
    phi = 0.5
    c_max = 2 * phi**2 / math.e
    assert sm_tail(phi, c_max, 20) == 1.0


# -- k-median order statistic density --------------------------------------------


def test_kmedian_order_pdf_reduces_to_unit_exponential():
    assert kmedian_order_pdf(0.0, 2, 1, 1.0) == pytest.approx(1.0, abs=1e-15)
    for x in (0.1, 0.8, 2.5):
        assert kmedian_order_pdf(x, 2, 1, 1.0) == pytest.approx(math.exp(-x), rel=1e-12)


@pytest.mark.parametrize("n,k,beta", [(10, 3, 0.5), (8, 1, 1.0), (12, 6, 0.25), (15, 14, 2.0)])
def test_kmedian_order_pdf_integrates_to_one(n, k, beta):
    total, err = quad(lambda x: kmedian_order_pdf(x, n, k, beta), 0.0, np.inf, limit=200)
    assert err < 1e-8
    assert total == pytest.approx(1.0, abs=1e-6)


def test_kmedian_order_pdf_nonnegative_and_validated():
    assert all(
        kmedian_order_pdf(x, 9, 4, 0.7) >= 0.0 for x in np.linspace(0.0, 30.0, 50)
    )
    with pytest.raises(ValueError):
        kmedian_order_pdf(1.0, 9, 9, 0.7)
    with pytest.raises(ValueError):
        kmedian_order_pdf(-1.0, 9, 4, 0.7)


# -- registry --------------------------------------------------------------------


def test_evaluate_round_trips_formula():
    out = evaluate("harmonic", n="4")
    assert out.value == pytest.approx(25 / 12)
    assert out.inputs == {"n": 4}
    out = evaluate("tau-cdf", x="0.5", n="10", k="5", alpha="0.5", beta="1")
    assert out.value[0] == pytest.approx(0.25915776787768136)


def test_evaluate_rejects_bad_requests():
    with pytest.raises(ValueError):
        evaluate("no-such-formula", n=1)
    with pytest.raises(ValueError):
        evaluate("harmonic")
    with pytest.raises(ValueError):
        evaluate("harmonic", n=1, extra=2)
