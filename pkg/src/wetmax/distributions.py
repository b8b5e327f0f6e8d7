"""Closed-form distributions for wet-spell precipitation maxima.

The central object is the three-parameter law on the positive half line with
distribution function

    F(x) = (lam * x**gamma / (1 + lam * x**gamma))**r,    x >= 0,

the limit distribution of the scaled maximum of a random (negative-binomial)
number of heavy-tailed daily precipitation volumes.  It is a gamma scale
mixture of Frechet laws, and also the law of a power of a Snedecor-Fisher
variate.

Besides the limit law (cdf, pdf, quantile, fractional moments) the module
evaluates the component laws the limit is built from: gamma and generalized
gamma densities, the Weibull and Frechet distribution functions, the negative
binomial pmf, the two mixing densities of its mixed-geometric representation,
fractional moments of one-sided stable laws, the density of a ratio of two
independent one-sided stable variates, and the Snedecor-Fisher density.

All functions are pure and deterministic, accept scalars or numpy arrays for
the principal argument, and are accurate to near machine precision where a
closed form exists.  Gamma-function ratios are evaluated through ``gammaln``
so that large arguments (e.g. negative binomial counts of several hundred)
do not overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln


class MomentNotDefinedError(ValueError):
    """Requested moment order is at or beyond the tail exponent."""


# ---------------------------------------------------------------------------
# parameter containers


@dataclass(frozen=True)
class ModelParams:
    """Parameters (r, lam, gamma) of the wet-spell maximum law.

    r is the shape, lam the scale rate (units mm**-gamma for data in mm) and
    gamma the tail exponent.  Moments of order delta exist only for
    delta < gamma.  All three must be strictly positive; product-form
    samplers impose the extra restriction r <= 1 and gamma <= 1, not this
    container.
    """

    r: float
    lam: float
    gamma: float

    def __post_init__(self):
        for name in ("r", "lam", "gamma"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class GammaParams:
    """Gamma law with shape r and rate lam, density lam^r x^(r-1) e^(-lam x) / Gamma(r)."""

    r: float
    lam: float

    def __post_init__(self):
        for name in ("r", "lam"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class GGParams:
    """Generalized gamma law: the power transform G^(1/gamma) of a gamma variate."""

    r: float
    gamma: float
    lam: float

    def __post_init__(self):
        r, gamma, lam = float(self.r), float(self.gamma), float(self.lam)
        if not np.isfinite(r) or r <= 0.0:
            raise ValueError(f"r must be finite and > 0, got {r!r}")
        if not np.isfinite(lam) or lam <= 0.0:
            raise ValueError(f"lam must be finite and > 0, got {lam!r}")
        if not np.isfinite(gamma) or gamma == 0.0:
            raise ValueError(f"gamma must be finite and nonzero, got {gamma!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class NegBinParams:
    """Negative binomial law with shape r > 0 and success probability p in (0, 1)."""

    r: float
    p: float

    def __post_init__(self):
        r, p = float(self.r), float(self.p)
        if not np.isfinite(r) or r <= 0.0:
            raise ValueError(f"r must be finite and > 0, got {r!r}")
        if not (0.0 < p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {p!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)

    @property
    def mu(self) -> float:
        """Odds p / (1 - p), the rate of the gamma law mixing the Poisson form."""
        return self.p / (1.0 - self.p)

    @property
    def mean(self) -> float:
        return self.r * (1.0 - self.p) / self.p


@dataclass(frozen=True)
class StableIndex:
    """Characteristic exponent of a one-sided strictly stable law.

    Only the totally skewed laws on the nonnegative half line are supported
    (shape parameter theta fixed to 1), so alpha must lie in (0, 1]; alpha = 1
    is the law degenerate at 1.
    """

    alpha: float
    theta: float = 1.0

    def __post_init__(self):
        alpha = float(self.alpha)
        if not (0.0 < alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
        if float(self.theta) != 1.0:
            raise ValueError("only the one-sided case theta = 1 is supported")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "theta", 1.0)


# ---------------------------------------------------------------------------
# argument handling


def _as_float_array(x, name, low=None, strict=False):
    arr = np.asarray(x, dtype=float)
    if low is not None:
        bad = ~(arr > low) if strict else ~(arr >= low)
        if np.any(bad):
            op = ">" if strict else ">="
            raise ValueError(f"{name} must be {op} {low}, got {np.min(arr)!r}")
    return arr


def _maybe_scalar(out, x):
    return float(out) if np.ndim(x) == 0 else out


# ---------------------------------------------------------------------------
# the limit law


def limit_cdf(x, params: ModelParams):
    """Distribution function (lam x^gamma / (1 + lam x^gamma))^r for x >= 0."""
    arr = _as_float_array(x, "x", low=0.0)
    # (t/(1+t))^r written as exp(-r*log1p(1/t)); exact 0 at t=0, exact 1 at
    # t=inf, so x**gamma overflowing to inf still lands on the right value
    with np.errstate(divide="ignore", over="ignore"):
        t = params.lam * arr ** params.gamma
        out = np.exp(-params.r * np.log1p(1.0 / t))
    return _maybe_scalar(out, x)


def limit_log_pdf(x, params: ModelParams):
    """Log density of the limit law, finite for every x > 0."""
    arr = _as_float_array(x, "x", low=0.0, strict=True)
    r, lam, gamma = params.r, params.lam, params.gamma
    logx = np.log(arr)
    with np.errstate(over="ignore", invalid="ignore"):
        out = (
            np.log(r * gamma)
            + r * np.log(lam)
            + (gamma * r - 1.0) * logx
            - (r + 1.0) * np.logaddexp(0.0, np.log(lam) + gamma * logx)
        )
    return _maybe_scalar(out, x)


def limit_pdf(x, params: ModelParams):
    """Density r gamma lam^r x^(gamma r - 1) / (1 + lam x^gamma)^(r+1), x > 0."""
    return np.exp(limit_log_pdf(x, params))


def limit_quantile(eps, params: ModelParams):
    """Quantile of order eps in (0, 1): (eps^(1/r) / (lam (1 - eps^(1/r))))^(1/gamma)."""
    arr = np.asarray(eps, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError(f"eps must lie strictly in (0, 1), got {eps!r}")
    log_t = np.log(arr) / params.r          # log eps^(1/r)
    one_minus_t = -np.expm1(log_t)          # 1 - eps^(1/r), accurate near 1
    out = np.exp((log_t - np.log(params.lam) - np.log(one_minus_t)) / params.gamma)
    return _maybe_scalar(out, eps)


def limit_moment(delta: float, params: ModelParams) -> float:
    """Fractional moment E[M^delta] for 0 < delta < gamma.

    Equals Gamma(r + delta/gamma) * Gamma(1 - delta/gamma) /
    (lam^(delta/gamma) * Gamma(r)).  Orders delta >= gamma do not exist
    because the density decays like x^(-1-gamma).
    """
    delta = float(delta)
    if delta <= 0.0:
        raise ValueError(f"delta must be > 0, got {delta!r}")
    if delta >= params.gamma:
        raise MomentNotDefinedError(
            f"moment of order {delta} does not exist: requires delta < gamma = {params.gamma}"
        )
    u = delta / params.gamma
    return float(
        np.exp(gammaln(params.r + u) + gammaln(1.0 - u) - u * np.log(params.lam) - gammaln(params.r))
    )


# ---------------------------------------------------------------------------
# component laws


def gamma_pdf(x, params: GammaParams):
    """Gamma density with shape r and rate lam."""
    arr = _as_float_array(x, "x", low=0.0)
    r, lam = params.r, params.lam
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(r * np.log(lam) - gammaln(r) + (r - 1.0) * np.log(arr) - lam * arr)
    if r == 1.0:  # x = 0 gives 0*log(0) above; the exponential density is lam there
        out = np.where(arr == 0.0, lam, out)
    return _maybe_scalar(out, x)


def gamma_cdf(x, params: GammaParams):
    """Gamma distribution function (regularized lower incomplete gamma)."""
    arr = _as_float_array(x, "x", low=0.0)
    return _maybe_scalar(gammainc(params.r, params.lam * arr), x)


def gg_pdf(x, params: GGParams):
    """Generalized gamma density |gamma| lam^r x^(gamma r - 1) e^(-lam x^gamma) / Gamma(r)."""
    arr = _as_float_array(x, "x", low=0.0, strict=True)
    r, gamma, lam = params.r, params.gamma, params.lam
    out = np.exp(
        np.log(abs(gamma))
        + r * np.log(lam)
        - gammaln(r)
        + (gamma * r - 1.0) * np.log(arr)
        - lam * arr ** gamma
    )
    return _maybe_scalar(out, x)


def weibull_cdf(x, gamma: float):
    """Weibull distribution function 1 - exp(-x^gamma) for x >= 0."""
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    arr = _as_float_array(x, "x", low=0.0)
    return _maybe_scalar(-np.expm1(-(arr ** gamma)), x)


def frechet_cdf(x, gamma: float):
    """Frechet (type II extreme value) distribution function exp(-x^-gamma), x >= 0."""
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    arr = _as_float_array(x, "x", low=0.0)
    with np.errstate(divide="ignore"):
        out = np.exp(-(arr ** -gamma))
    return _maybe_scalar(out, x)


def negbin_pmf(k, params: NegBinParams):
    """P(N = k) = Gamma(r+k) p^r (1-p)^k / (k! Gamma(r)) for k = 0, 1, 2, ..."""
    arr = np.asarray(k)
    if not np.issubdtype(arr.dtype, np.number):
        raise ValueError(f"k must be numeric, got {k!r}")
    if np.any(arr < 0) or np.any(arr != np.floor(arr)):
        raise ValueError(f"k must contain nonnegative integers, got {k!r}")
    kk = arr.astype(float)
    r, p = params.r, params.p
    out = np.exp(
        gammaln(r + kk) - gammaln(kk + 1.0) - gammaln(r)
        + r * np.log(p) + kk * np.log1p(-p)
    )
    return _maybe_scalar(out, k)


def negbin_odds_mixing_density(z, r: float, mu: float):
    """Density of the random odds in the mixed-geometric form of the negative binomial.

    A negative binomial count with shape r in (0, 1) is a geometric count
    whose success probability is random; writing that probability as
    Z/(Z+1), the odds variable Z has density

        mu^r / (Gamma(1-r) Gamma(r)) * 1(z >= mu) / ((z - mu)^r z),

    where mu = p/(1-p).  The singularity at z = mu is integrable.
    """
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie strictly in (0, 1), got {r!r}")
    if mu <= 0.0:
        raise ValueError(f"mu must be > 0, got {mu!r}")
    arr = np.asarray(z, dtype=float)
    log_const = r * np.log(mu) - gammaln(1.0 - r) - gammaln(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            arr >= mu,
            np.exp(log_const - r * np.log(arr - mu) - np.log(arr)),
            0.0,
        )
    return _maybe_scalar(out, z)


def negbin_prob_mixing_density(y, r: float, p: float):
    """Density of the random success probability in the mixed-geometric form.

    Supported on p < y < 1:

        p^r / (Gamma(1-r) Gamma(r)) * (1 - y)^(r-1) / (y (y - p)^r).
    """
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie strictly in (0, 1), got {r!r}")
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    arr = np.asarray(y, dtype=float)
    log_const = r * np.log(p) - gammaln(1.0 - r) - gammaln(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            (arr > p) & (arr < 1.0),
            np.exp(
                log_const
                + (r - 1.0) * np.log1p(-arr)
                - np.log(arr)
                - r * np.log(arr - p)
            ),
            0.0,
        )
    return _maybe_scalar(out, y)


def stable_ratio_density(x, alpha: float):
    """Density of the ratio of two i.i.d. one-sided stable variates.

    For alpha in (0, 1):

        v(x) = sin(pi alpha) x^(alpha-1) / (pi [1 + x^(2 alpha) + 2 x^alpha cos(pi alpha)]).

    The law is self-reciprocal: the ratio and its inverse coincide in
    distribution, equivalently v(x) = v(1/x) / x^2.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha!r}")
    arr = _as_float_array(x, "x", low=0.0, strict=True)
    xa = arr ** alpha
    out = np.sin(np.pi * alpha) * arr ** (alpha - 1.0) / (
        np.pi * (1.0 + xa * xa + 2.0 * xa * np.cos(np.pi * alpha))
    )
    return _maybe_scalar(out, x)


def stable_moment(alpha: float, beta: float) -> float:
    """Fractional moment E[S^beta] = Gamma(1 - beta/alpha) / Gamma(1 - beta).

    S is the one-sided strictly stable variate with exponent alpha in (0, 1]
    (normalized so that its Laplace transform is exp(-s^alpha)); the moment
    exists for 0 < beta < alpha, and equals 1 identically when alpha = 1.
    """
    alpha = float(alpha)
    beta = float(beta)
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    if not (0.0 < beta < alpha):
        raise ValueError(f"beta must lie in (0, alpha), got beta={beta!r} alpha={alpha!r}")
    return float(np.exp(gammaln(1.0 - beta / alpha) - gammaln(1.0 - beta)))


def snedecor_fisher_density(x, r: float):
    """Snedecor-Fisher density r^(r+1) x^(r-1) / (1 + r x)^(r+1) for x >= 0.

    This is the F density with (2r, 2) degrees of freedom, i.e. the law of
    G / (r E) for independent G ~ gamma(r, 1) and standard exponential E.
    The wet-spell maximum law is recovered as the law of (r Q / lam)^(1/gamma)
    for Q with this density.
    """
    if r <= 0.0:
        raise ValueError(f"r must be > 0, got {r!r}")
    arr = _as_float_array(x, "x", low=0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(
            (r + 1.0) * np.log(r)
            + (r - 1.0) * np.log(arr)
            - (r + 1.0) * np.log1p(r * arr)
        )
    if np.any(arr == 0.0):
        # x^(r-1) at zero: 0 for r > 1, 1 for r = 1 (value r^(r+1) = 1), inf for r < 1
        at_zero = 1.0 if r == 1.0 else (0.0 if r > 1.0 else np.inf)
        out = np.where(arr == 0.0, at_zero, out)
    return _maybe_scalar(out, x)
