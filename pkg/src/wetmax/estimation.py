"""Parameter estimation for the wet-spell maximum law.

Three estimators are provided for the triple (r, lam, gamma) given a sample
of per-spell maxima:

* :func:`fit_quantile` - matches three empirical quantiles to the explicit
  quantile formula of the law.  The shape enters through s = 1/r, found as
  the root of a scalar equation; lam and gamma then follow in closed form.
  With r known the root solve is skipped.
* :func:`fit_least_squares` - with r known, regresses the log order
  statistics on their plotting positions; lam and gamma come out of the
  normal equations in closed form.
* :func:`fit_mle` - refines any starting triple by direct (simplex) search
  on the log likelihood in log-parameter space.

:func:`fit_negbin` fits the negative binomial law to wet-period durations
(shifted down by one day so the support starts at zero) and is how the shape
r is usually fixed before the two-parameter fits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.special import gammaln

from . import gof
from .distributions import ModelParams, NegBinParams, limit_log_pdf


class EstimationError(RuntimeError):
    """An estimator could not produce parameters from the given data."""


@dataclass(frozen=True, eq=False)
class MaximaSample:
    """Sample of per-wet-period maxima; keeps a sorted copy for order statistics."""

    values: np.ndarray
    sorted_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("maxima sample must be nonempty")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError("maxima must all be finite and > 0")
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "sorted_values", np.sort(arr))

    @property
    def m(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class QuantileTriple:
    """Three probability levels 0 < p1 < p2 < p3 < 1 used by the quantile fit."""

    p1: float = 0.25
    p2: float = 0.50
    p3: float = 0.75

    def __post_init__(self):
        p1, p2, p3 = float(self.p1), float(self.p2), float(self.p3)
        if not (0.0 < p1 < p2 < p3 < 1.0):
            raise ValueError(f"need 0 < p1 < p2 < p3 < 1, got {(p1, p2, p3)!r}")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "p3", p3)

    @classmethod
    def from_tau(cls, tau: float) -> "QuantileTriple":
        """Symmetric triple (tau, 1/2, 1-tau) for tau in (0, 1/4)."""
        if not (0.0 < tau < 0.25):
            raise ValueError(f"tau must lie in (0, 0.25), got {tau!r}")
        return cls(tau, 0.5, 1.0 - tau)


@dataclass(frozen=True)
class FitReport:
    """Estimated parameters plus fit diagnostics."""

    params: ModelParams
    method: str
    ks_distance: float
    m: int
    log_likelihood: Optional[float] = None
    iterations: Optional[int] = None
    converged: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "r": self.params.r,
            "lambda": self.params.lam,
            "gamma": self.params.gamma,
            "ks_distance": self.ks_distance,
            "m": self.m,
            "log_likelihood": self.log_likelihood,
            "iterations": self.iterations,
            "converged": self.converged,
        }


# ---------------------------------------------------------------------------
# quantile matching


def _log_one_minus_pow(p: float, s) -> np.ndarray:
    """log(1 - p**s), computed as log(-expm1(s*log(p))) to stay accurate."""
    return np.log(-np.expm1(s * np.log(p)))


def _solve_shape_equation(x1, x2, x3, p1, p2, p3) -> float:
    """Root s = 1/r of the scalar quantile-matching equation.

    A sign change is located on a log-spaced grid over [1e-3, 1e3] and
    refined by bisection; scanning the whole bracket guards against spurious
    roots next to zero.
    """
    log_x12 = np.log(x1 / x2)
    log_x13 = np.log(x1 / x3)
    c = log_x13 * np.log(p1 / p2) - log_x12 * np.log(p1 / p3)

    def equation(s):
        b = _log_one_minus_pow(p3, s) - _log_one_minus_pow(p1, s)
        a = _log_one_minus_pow(p2, s) - _log_one_minus_pow(p1, s)
        return c * s - (b * log_x12 - a * log_x13)

    grid = np.logspace(-3.0, 3.0, 601)
    values = equation(grid)
    finite = np.isfinite(values)
    sign_change = None
    for i in range(len(grid) - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        if values[i] == 0.0:
            return float(grid[i])
        if values[i] * values[i + 1] < 0.0:
            sign_change = i
            break
    if sign_change is None:
        raise EstimationError(
            "quantile fit failed: no sign change of the shape equation on s in [1e-3, 1e3]"
        )
    lo, hi = float(grid[sign_change]), float(grid[sign_change + 1])
    f_lo = float(values[sign_change])
    for _ in range(200):
        if hi - lo <= 1e-12:
            break
        mid = 0.5 * (lo + hi)
        f_mid = float(equation(mid))
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _order_statistics(sample: MaximaSample, triple: QuantileTriple):
    m = sample.m
    indices = []
    for p in (triple.p1, triple.p2, triple.p3):
        # integer part of m*p, clamped to a valid order statistic; the tiny
        # nudge keeps e.g. 100 * 0.29 = 28.999...996 from truncating to 28
        idx = int(np.floor(m * p + 1e-9))
        if idx < 1:
            raise EstimationError(
                f"sample of size {m} too small for quantile level {p}: [m*p] < 1"
            )
        indices.append(min(idx, m))
    x1, x2, x3 = (float(sample.sorted_values[i - 1]) for i in indices)
    if not (x1 < x2 < x3):
        raise EstimationError(
            f"degenerate sample: order statistics {(x1, x2, x3)!r} at levels "
            f"{(triple.p1, triple.p2, triple.p3)!r} are not strictly increasing"
        )
    return x1, x2, x3


def fit_quantile(
    sample: MaximaSample,
    triple: QuantileTriple | None = None,
    r: float | None = None,
) -> ModelParams:
    """Quantile-matching estimate of (r, lam, gamma).

    Matches the order statistics at levels (p1, p2, p3) to the explicit
    quantile formula.  When ``r`` is given the scalar root solve for
    s = 1/r is skipped and only lam and gamma are estimated.
    """
    triple = triple if triple is not None else QuantileTriple()
    x1, x2, x3 = _order_statistics(sample, triple)
    p1, p2, p3 = triple.p1, triple.p2, triple.p3
    if r is None:
        s = _solve_shape_equation(x1, x2, x3, p1, p2, p3)
    else:
        if r <= 0.0:
            raise ValueError(f"r must be > 0, got {r!r}")
        s = 1.0 / float(r)
    gamma = (
        s * (np.log(p1) - np.log(p3))
        + _log_one_minus_pow(p3, s)
        - _log_one_minus_pow(p1, s)
    ) / (np.log(x1) - np.log(x3))
    log_lam = s * np.log(p2) - _log_one_minus_pow(p2, s) - gamma * np.log(x2)
    try:
        return ModelParams(1.0 / s, float(np.exp(log_lam)), float(gamma))
    except ValueError as exc:
        raise EstimationError(f"quantile fit produced invalid parameters: {exc}") from exc


def fit_quantile_tau_scan(
    sample: MaximaSample,
    tau_grid: Sequence[float],
    r: float | None = None,
):
    """Run the quantile fit over triples (tau, 1/2, 1-tau) and keep the best.

    Returns ``(params, tau)`` for the grid point whose fitted law is closest
    to the empirical d.f. in uniform distance; ties go to the smaller tau.
    """
    taus = [float(t) for t in tau_grid]
    if not taus:
        raise ValueError("tau grid must be nonempty")
    triples = [(tau, QuantileTriple.from_tau(tau)) for tau in sorted(taus)]
    best = None
    failures = []
    for tau, triple in triples:
        try:
            params = fit_quantile(sample, triple, r=r)
            ks = gof.ks_model(sample, params).ks_distance
        except EstimationError as exc:
            failures.append(f"tau={tau}: {exc}")
            continue
        if best is None or ks < best[0]:
            best = (ks, tau, params)
    if best is None:
        raise EstimationError(
            "quantile fit failed for every tau in the grid: " + "; ".join(failures)
        )
    return best[2], best[1]


# ---------------------------------------------------------------------------
# least squares on the order statistics


def _regression_targets(m: int, r: float) -> np.ndarray:
    """c_i = log(i^(1/r) / (m^(1/r) - i^(1/r))) for i = 1..m-1, in a stable form."""
    i = np.arange(1, m, dtype=float)
    log_ratio = np.log(i / m)
    return log_ratio / r - np.log(-np.expm1(log_ratio / r))


def fit_least_squares(sample: MaximaSample, r: float):
    """Closed-form least-squares estimate of (lam, gamma) with known shape r.

    The empirical d.f. heights i/m are mapped through the inverse law onto
    targets c_i which are linear in log X*_(i) with slope gamma and
    intercept log lam; the top order statistic is excluded because its
    target is infinite.  Returns ``(lam, gamma)``.
    """
    if r <= 0.0:
        raise ValueError(f"r must be > 0, got {r!r}")
    m = sample.m
    if m < 3:
        raise EstimationError(f"least squares needs m >= 3, got m={m}")
    logx = np.log(sample.sorted_values[: m - 1])
    if np.all(logx == logx[0]):
        raise EstimationError("least squares failed: all regressor values equal")
    c = _regression_targets(m, float(r))
    logx_c = logx - logx.mean()
    gamma = float(np.dot(c - c.mean(), logx_c) / np.dot(logx_c, logx_c))
    lam = float(np.exp(c.mean() - gamma * logx.mean()))
    return lam, gamma


# ---------------------------------------------------------------------------
# maximum likelihood refinement


def _log_likelihood(values: np.ndarray, params: ModelParams) -> float:
    return float(np.sum(limit_log_pdf(values, params)))


def fit_mle(
    sample: MaximaSample,
    init: ModelParams,
    fix_r: bool = False,
    max_iter: int = 2000,
    xtol: float = 1e-8,
) -> FitReport:
    """Maximize the sample log likelihood by Nelder-Mead in log-parameter space.

    The search runs over (log r, log lam, log gamma), or over the last two
    with ``fix_r``, which keeps every iterate strictly positive without
    constraints.  It stops once the simplex diameter falls below ``xtol``
    (in log space) or after ``max_iter`` iterations.  The reported
    likelihood never falls below the likelihood at ``init``.
    """
    values = sample.values
    ll_init = _log_likelihood(values, init)
    if not np.isfinite(ll_init):
        raise EstimationError(
            f"invalid start: log likelihood at {init!r} is not finite"
        )

    if fix_r:
        def unpack(u):
            return ModelParams(init.r, float(np.exp(u[0])), float(np.exp(u[1])))

        u0 = np.log([init.lam, init.gamma])
    else:
        def unpack(u):
            return ModelParams(*(float(v) for v in np.exp(u)))

        u0 = np.log([init.r, init.lam, init.gamma])

    def negative_ll(u):
        try:
            ll = _log_likelihood(values, unpack(u))
        except (OverflowError, ValueError):
            return np.inf
        return -ll if np.isfinite(ll) else np.inf

    result = minimize(
        negative_ll,
        u0,
        method="Nelder-Mead",
        options={"xatol": xtol, "fatol": np.inf, "maxiter": max_iter, "maxfev": 10 * max_iter},
    )
    params = unpack(result.x)
    ll = _log_likelihood(values, params)
    if ll < ll_init:  # simplex never accepts a worse best vertex; belt and braces
        params, ll = init, ll_init
    return FitReport(
        params=params,
        method="mle",
        ks_distance=gof.ks_model(sample, params).ks_distance,
        m=sample.m,
        log_likelihood=ll,
        iterations=int(result.nit),
        converged=bool(result.success),
    )


# ---------------------------------------------------------------------------
# negative binomial fit for wet-period durations


def fit_negbin(durations: Sequence[int]) -> NegBinParams:
    """Fit the negative binomial law to wet-period durations.

    Durations are whole days >= 1 while the negative binomial is supported
    on {0, 1, 2, ...}, so the fit is applied to durations - 1.  Moment
    estimates seed a one-dimensional likelihood maximization in the shape r,
    with p profiled out as p = r / (r + mean).  Data whose variance does not
    exceed the mean carry no overdispersion signal and are rejected.
    """
    arr = np.asarray(durations)
    if arr.size < 2:
        raise EstimationError("need at least 2 durations to fit")
    if np.any(arr < 1) or np.any(arr != np.floor(arr)):
        raise ValueError(f"durations must be whole days >= 1, got {durations!r}")
    if np.unique(arr).size < 2:
        raise EstimationError(
            "need at least 2 distinct duration values "
            "(no overdispersion: variance <= mean, the fit degenerates "
            "to the geometric/Poisson boundary)"
        )
    shifted = arr.astype(float) - 1.0
    mean = float(shifted.mean())
    var = float(shifted.var(ddof=1))
    if var <= mean:
        raise EstimationError(
            f"no overdispersion: variance {var:.6g} <= mean {mean:.6g}; "
            "negative binomial fit with r > 0 unavailable "
            "(data sit at the geometric/Poisson boundary)"
        )
    r0 = mean * mean / (var - mean)

    def negative_profile_ll(log_r):
        r = float(np.exp(log_r))
        p = r / (r + mean)
        ll = float(
            np.sum(gammaln(r + shifted)) - shifted.size * gammaln(r)
            + shifted.size * r * np.log(p) + np.sum(shifted) * np.log1p(-p)
        )
        return -ll

    result = minimize_scalar(
        negative_profile_ll,
        bounds=(np.log(r0) - 7.0, np.log(r0) + 7.0),
        method="bounded",
        options={"xatol": 1e-10},
    )
    r_hat = float(np.exp(result.x))
    return NegBinParams(r_hat, r_hat / (r_hat + mean))
