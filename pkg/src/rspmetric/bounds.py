"""Closed-form evaluators for the structural and tail bounds.

These are comparison curves for the Monte Carlo suites: exact harmonic-sum
brackets for the growth process, CDF brackets, and the tail bounds for the
diameter, ball sizes, light edge sums, and k-median order statistics.
Probability-valued results are clamped to [0, 1]; a clamp means the bound is
vacuous at those parameters and is logged.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NTooSmallError, ParameterOutOfRangeError

log = logging.getLogger(__name__)


def _exp_capped(rate: float, cap: float) -> float:
    """min(e^rate, cap) without overflowing for large rates."""
    if rate >= math.log(cap):
        return cap
    return math.exp(rate)


def _clamp01(value: float, formula_id: str) -> float:
    if value > 1.0:
        log.info("%s evaluated to %.6g; clamped to 1 (vacuous regime)", formula_id, value)
        return 1.0
    if value < 0.0:
        log.info("%s evaluated to %.6g; clamped to 0", formula_id, value)
        return 0.0
    return value


@lru_cache(maxsize=None)
def harmonic(n: int) -> float:
    """H_n = sum_{i=1}^n 1/i by direct summation (H_0 = 0)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.fsum(1.0 / i for i in range(1, n + 1))


def exp_sum_cdf(c: float, n: int, a: float) -> float:
    """P(X <= a) = (1 - e^{-ca})^n for X a sum of exponentials with rates c, 2c, ..., nc."""
    if c <= 0:
        raise ValueError("c must be positive")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if a < 0:
        raise ValueError("a must be nonnegative")
    return (-math.expm1(-c * a)) ** n


def tau_expectation_bounds(n: int, k: int, alpha: float, beta: float) -> tuple[float, float]:
    """Bracket on the expected distance to the k-th closest vertex.

    (H_{k-1} + H_{n-1} - H_{n-k}) / (beta n) below, the same over alpha above.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if not 0 < alpha <= beta <= 1:
        raise ValueError("need 0 < alpha <= beta <= 1")
    num = harmonic(k - 1) + harmonic(n - 1) - harmonic(n - k)
    return (num / (beta * n), num / (alpha * n))


def tau_cdf_bounds(x: float, n: int, k: int, alpha: float, beta: float) -> tuple[float, float]:
    """Pointwise bracket on P(tau_k(v) <= x).

    Lower bound is the better of the two known bounds at each point:
    (1 - e^{-alpha(n-k)x})^{k-1} and (1 - e^{-alpha n x / 4})^n.  Upper bound
    is (1 - e^{-beta n x})^{k-1}.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if not 0 < alpha <= beta <= 1:
        raise ValueError("need 0 < alpha <= beta <= 1")
    lower_a = (-math.expm1(-alpha * (n - k) * x)) ** (k - 1)
    lower_b = (-math.expm1(-alpha * n * x / 4.0)) ** n
    upper = (-math.expm1(-beta * n * x)) ** (k - 1)
    return (max(lower_a, lower_b), upper)


def diameter_tail(c: float, n: int) -> float:
    """Bound on P(diameter > c ln(n) / (alpha n)): min{1, n^{2 - c/4}}."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return _clamp01(float(n) ** (2.0 - c / 4.0), "diameter-tail")


def ball_tail(delta: float, n: int, alpha: float) -> tuple[float, float]:
    """(size threshold, tail bound) for the ball of radius delta.

    P(|B_delta(v)| < min{e^{alpha delta n/5}, (n+1)/2}) <= e^{-alpha delta n/5};
    stated only for n >= 5.
    """
    if n < 5:
        raise NTooSmallError("ball tail bound needs n >= 5")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    rate = alpha * delta * n / 5.0
    return (_exp_capped(rate, (n + 1) / 2.0), math.exp(-rate))


def cluster_scale(delta: float, n: int, alpha: float) -> tuple[float, float]:
    """(s_delta, n / s_delta): density threshold and cluster-count scale."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    s = _exp_capped(alpha * delta * n / 5.0, (n + 1) / 2.0)
    return (s, n / s)


def janson_lower_tail(lam: float, mu: float, a_star: float) -> float:
    """Lower-tail bound for sums of independent exponentials.

    P(X <= lam * mu) <= exp(-a_* mu (lam - 1 - ln lam)) for lam in (0, 1],
    where mu = E[X] and a_* is the smallest rate.
    """
    if not 0 < lam <= 1:
        raise ParameterOutOfRangeError("lambda must lie in (0, 1]")
    if mu <= 0 or a_star <= 0:
        raise ValueError("mu and a_star must be positive")
    return _clamp01(math.exp(-a_star * mu * (lam - 1.0 - math.log(lam))), "janson-lower-tail")


def sm_tail(phi: float, c: float, n: int) -> float:
    """Bound on P(S_{phi n} <= c / beta) for the sum of the lightest edges.

    min{1, exp(phi n (2 + ln(c / (2 phi^2))))}, valid for 0 < phi <= (n-1)/n
    and 0 < c <= 2 phi^2 / e.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not 0 < phi <= (n - 1) / n:
        raise ParameterOutOfRangeError(f"phi must lie in (0, {(n - 1) / n:.6g}]")
    if not 0 < c <= 2.0 * phi * phi / math.e:
        raise ParameterOutOfRangeError(f"c must lie in (0, {2.0 * phi * phi / math.e:.6g}]")
    return _clamp01(math.exp(phi * n * (2.0 + math.log(c / (2.0 * phi * phi)))), "sm-tail")


def kmedian_order_pdf(x: float, n: int, k: int, beta: float) -> float:
    """Density of the stochastic lower bound on the trivial k-median cost.

    beta k C(n-1, k) e^{-beta k x} (1 - e^{-beta x})^{n-k-1}; this is the
    (n-k)-th smallest of n-1 independent rate-beta exponentials.  The
    binomial coefficient is kept in log space.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    if beta <= 0:
        raise ValueError("beta must be positive")
    log_binom = math.lgamma(n) - math.lgamma(k + 1) - math.lgamma(n - k)
    t = -math.expm1(-beta * x)
    if n - k - 1 == 0:
        tail = 0.0
    elif t == 0.0:
        return 0.0
    else:
        tail = (n - k - 1) * math.log(t)
    return math.exp(math.log(beta * k) + log_binom - beta * k * x + tail)


@dataclass(frozen=True)
class BoundValue:
    """A formula evaluation with its identifier and echoed inputs."""

    formula_id: str
    value: float | tuple[float, ...]
    inputs: dict


_INT_PARAMS = {"n", "k"}

FORMULAS: dict[str, tuple] = {
    "harmonic": (harmonic, ("n",)),
    "exp-sum-cdf": (exp_sum_cdf, ("c", "n", "a")),
    "tau-expectation": (tau_expectation_bounds, ("n", "k", "alpha", "beta")),
    "tau-cdf": (tau_cdf_bounds, ("x", "n", "k", "alpha", "beta")),
    "diameter-tail": (diameter_tail, ("c", "n")),
    "ball-tail": (ball_tail, ("delta", "n", "alpha")),
    "cluster-scale": (cluster_scale, ("delta", "n", "alpha")),
    "janson-lower-tail": (janson_lower_tail, ("lam", "mu", "a_star")),
    "sm-tail": (sm_tail, ("phi", "c", "n")),
    "kmedian-order-pdf": (kmedian_order_pdf, ("x", "n", "k", "beta")),
}


def evaluate(formula_id: str, **params) -> BoundValue:
    """Evaluate a formula by identifier; used by the CLI."""
    if formula_id not in FORMULAS:
        raise ValueError(f"unknown formula {formula_id!r}; know {sorted(FORMULAS)}")
    fn, names = FORMULAS[formula_id]
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise ValueError(f"{formula_id} takes {names}; missing {missing}, extra {extra}")
    args = {p: int(params[p]) if p in _INT_PARAMS else float(params[p]) for p in names}
    return BoundValue(formula_id=formula_id, value=fn(**args), inputs=args)
