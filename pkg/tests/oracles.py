"""Independent numerical oracles shared by the test modules.

Everything here is deliberately computed through a different route than the
library code it checks: quadrature instead of closed forms, bisection
instead of algebraic inversion, math.gamma instead of gammaln, and the
closed Levy distribution function for the alpha = 1/2 stable law.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc


def ks_critical_one_sample(n: int, level: float = 0.01) -> float:
    """Asymptotic Kolmogorov-Smirnov critical value for a one-sample test."""
    coefficient = {0.01: 1.628, 0.05: 1.358}[level]
    return coefficient / math.sqrt(n)


def ks_critical_two_sample(n: int, m: int, level: float = 0.01) -> float:
    coefficient = {0.01: 1.628, 0.05: 1.358}[level]
    return coefficient * math.sqrt((n + m) / (n * m))


def levy_cdf(x):
    """Distribution function of the alpha = 1/2 one-sided stable law.

    For the Laplace-transform normalization exp(-sqrt(s)) the law is
    1/(2 Z^2) for a standard normal Z, i.e. P(S < x) = erfc(1/(2 sqrt(x))).
    """
    x = np.asarray(x, dtype=float)
    return erfc(1.0 / (2.0 * np.sqrt(x)))


def bisect_inverse(fn, target: float, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Invert a monotone increasing function by plain bisection."""
    f_lo, f_hi = fn(lo) - target, fn(hi) - target
    assert f_lo <= 0.0 <= f_hi, "target not bracketed"
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, mid):
            break
        if fn(mid) - target <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def integrate_against_odds_density(fn, r: float, mu: float) -> float:
    """Integral of fn(z) against the odds mixing density on [mu, inf).

    The density is const * (z - mu)^(-r) / z; substituting u = (z - mu)^(1-r)
    removes the endpoint singularity exactly, leaving a bounded integrand.
    """
    const = math.exp(r * math.log(mu) - math.lgamma(1.0 - r) - math.lgamma(r))
    power = 1.0 / (1.0 - r)

    def transformed(u):
        z = mu + u ** power
        return fn(z) / z

    value, _err = quad(transformed, 0.0, np.inf, limit=400, epsabs=1e-12, epsrel=1e-11)
    return const * value / (1.0 - r)


def integrate_against_prob_density(fn, r: float, p: float) -> float:
    """Integral of fn(y) against the success-probability mixing density on (p, 1).

    The density is const * (1-y)^(r-1) / (y (y-p)^r), singular at both ends;
    each half gets its own singularity-removing substitution
    (u = (y-p)^(1-r) on the left, v = (1-y)^r on the right).
    """
    const = math.exp(r * math.log(p) - math.lgamma(1.0 - r) - math.lgamma(r))
    mid = 0.5 * (p + 1.0)

    power_left = 1.0 / (1.0 - r)

    def left(u):
        y = p + u ** power_left
        return fn(y) * (1.0 - y) ** (r - 1.0) / y

    left_value, _ = quad(
        left, 0.0, (mid - p) ** (1.0 - r), limit=400, epsabs=1e-12, epsrel=1e-11
    )

    power_right = 1.0 / r

    def right(v):
        y = 1.0 - v ** power_right
        return fn(y) / (y * (y - p) ** r)

    right_value, _ = quad(
        right, 0.0, (1.0 - mid) ** r, limit=400, epsabs=1e-12, epsrel=1e-11
    )
    return const * (left_value / (1.0 - r) + right_value / r)


def one_sample_ks(values, cdf) -> float:
    """Exact one-sample Kolmogorov-Smirnov statistic (local copy for oracles)."""
    xs = np.sort(np.asarray(values, dtype=float))
    n = xs.size
    model = np.asarray(cdf(xs), dtype=float)
    i = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(np.abs(i - model), np.abs(i - 1.0 / n - model))))
