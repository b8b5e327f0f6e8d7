"""Seedable random variate generation for the wet-spell maximum model.

Every sampler is a pure function of its parameters and a numpy
``Generator``; identical seeds give bit-identical streams.  The generator
factory :func:`make_rng` is built on the counter-based Philox engine, so
Monte Carlo studies can hand out disjoint substreams per replicate index and
still be reproducible when run in parallel.

The limit law can be drawn through any of seven equivalent product
representations (:class:`Representation`); the representations built from
stable ratios or from the mixed-geometric odds variable are only valid for
shape r <= 1 and tail exponent gamma <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distributions import GammaParams, ModelParams, NegBinParams, StableIndex


class RepresentationDomainError(ValueError):
    """Representation requested outside its parameter domain (needs r, gamma <= 1)."""


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; distinct ``stream`` values give disjoint substreams."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)).jumped(stream))


@dataclass(frozen=True)
class RngState:
    """Seed plus substream index; the same state always yields the same stream."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return make_rng(self.seed, self.stream)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngState):
        return rng.generator()
    return rng


def _maybe_scalar_like(out, size):
    return float(out) if size is None else out


class Representation(str, Enum):
    """Product forms of the limit variate M with d.f. (lam x^g / (1 + lam x^g))^r.

    DIRECT           G_{r,lam}^(1/gamma) / W_gamma (gamma variate over Weibull).
    SNEDECOR_FISHER  (r Q / lam)^(1/gamma) for a Snedecor-Fisher variate Q.
    STABLE           G_{r,lam}^(1/gamma) S_gamma / E  (one-sided stable factor).
    WEIBULL_RATIO    (W_gamma / W'_gamma) / Z^(1/gamma).
    PARETO_RATIO     Pi R_gamma / Z^(1/gamma)  (Pareto times stable ratio).
    FOLDED_NORMAL    |X| sqrt(2 E) R_gamma / (E' Z^(1/gamma)).
    MIXED_EXPONENTIAL  E / (E' R_gamma Z^(1/gamma)): exponential with random rate.

    Z is the random odds variable of the mixed-geometric representation of
    the negative binomial (drawn by :func:`sample_negbin_odds` at rate lam).
    All forms except DIRECT and SNEDECOR_FISHER require r <= 1 and gamma <= 1.
    """

    DIRECT = "direct"
    SNEDECOR_FISHER = "snedecor-fisher"
    STABLE = "stable"
    WEIBULL_RATIO = "weibull-ratio"
    PARETO_RATIO = "pareto-ratio"
    FOLDED_NORMAL = "folded-normal"
    MIXED_EXPONENTIAL = "mixed-exponential"


RESTRICTED_REPRESENTATIONS = frozenset(
    {
        Representation.STABLE,
        Representation.WEIBULL_RATIO,
        Representation.PARETO_RATIO,
        Representation.FOLDED_NORMAL,
        Representation.MIXED_EXPONENTIAL,
    }
)


def sample_gamma(params: GammaParams, rng, size=None):
    """Gamma variates with shape r and rate lam.

    Shapes below one are drawn by boosting a shape r+1 variate with an
    independent uniform power factor U^(1/r), which stays accurate where
    rejection samplers degrade.
    """
    rng = _gen(rng)
    if params.r < 1.0:
        g = rng.standard_gamma(params.r + 1.0, size=size)
        g = g * (1.0 - rng.random(size)) ** (1.0 / params.r)
    else:
        g = rng.standard_gamma(params.r, size=size)
    return g / params.lam


def sample_weibull(gamma: float, rng, size=None):
    """Weibull variates with d.f. 1 - exp(-x^gamma), drawn as E^(1/gamma) by inversion."""
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    rng = _gen(rng)
    e = -np.log1p(-rng.random(size))
    return e ** (1.0 / gamma)


def sample_stable_onesided(index, rng, size=None):
    """One-sided strictly stable variates, Laplace transform exp(-s^alpha).

    Uses the exact uniform-exponential (Kanter) transform for alpha < 1;
    alpha = 1 is the law degenerate at 1.
    """
    if not isinstance(index, StableIndex):
        index = StableIndex(float(index))
    rng = _gen(rng)
    alpha = index.alpha
    if alpha == 1.0:
        return 1.0 if size is None else np.ones(size)
    u = np.pi * rng.random(size)
    e = -np.log1p(-rng.random(size))
    c = (1.0 - alpha) / alpha
    log_s = (
        np.log(np.sin(alpha * u))
        + c * np.log(np.sin((1.0 - alpha) * u))
        - np.log(np.sin(u)) / alpha
        - c * np.log(e)
    )
    return np.exp(log_s)


def sample_stable_ratio(alpha: float, rng, size=None):
    """Ratio of two independent one-sided stable variates with the same exponent.

    Self-reciprocal in distribution.  alpha = 1 is accepted and degenerates
    to the constant 1, matching the degenerate stable factors it divides.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    rng = _gen(rng)
    s1 = sample_stable_onesided(alpha, rng, size)
    s2 = sample_stable_onesided(alpha, rng, size)
    return s1 / s2


def sample_negbin_odds(r: float, mu: float, rng, size=None):
    """Random odds Z >= mu of the mixed-geometric negative binomial form.

    Z = mu (G_r + G_{1-r}) / G_r for independent standard gamma variates.
    r = 1 is the plain geometric case where the mixing law collapses to the
    point mass at mu.
    """
    if not (0.0 < r <= 1.0):
        raise ValueError(f"r must lie in (0, 1], got {r!r}")
    if mu <= 0.0:
        raise ValueError(f"mu must be > 0, got {mu!r}")
    rng = _gen(rng)
    if r == 1.0:
        return float(mu) if size is None else np.full(size, float(mu))
    g1 = sample_gamma(GammaParams(r, 1.0), rng, size)
    g2 = sample_gamma(GammaParams(1.0 - r, 1.0), rng, size)
    return mu * (g1 + g2) / g1


def sample_negbin(params: NegBinParams, rng, size=None):
    """Negative binomial counts, drawn as Poisson with a gamma(r, p/(1-p)) random rate."""
    rng = _gen(rng)
    rate = sample_gamma(GammaParams(params.r, params.mu), rng, size)
    return rng.poisson(rate)


def sample_limit(params: ModelParams, tag: Representation, rng, size=None):
    """Draw from the limit law through the product representation ``tag``.

    Every representation yields the same distribution on its domain; the
    stable/ratio based forms require r <= 1 and gamma <= 1 and raise
    :class:`RepresentationDomainError` otherwise.
    """
    tag = Representation(tag)
    if tag in RESTRICTED_REPRESENTATIONS and (params.r > 1.0 or params.gamma > 1.0):
        raise RepresentationDomainError(
            f"representation {tag.value!r} requires r <= 1 and gamma <= 1, "
            f"got r={params.r}, gamma={params.gamma}"
        )
    rng = _gen(rng)
    r, lam, gamma = params.r, params.lam, params.gamma
    inv_g = 1.0 / gamma

    if tag is Representation.DIRECT:
        g = sample_gamma(GammaParams(r, lam), rng, size)
        w = sample_weibull(gamma, rng, size)
        return g ** inv_g / w
    if tag is Representation.SNEDECOR_FISHER:
        g = sample_gamma(GammaParams(r, 1.0), rng, size)
        e = rng.standard_exponential(size)
        q = g / (r * e)
        return (r * q / lam) ** inv_g
    if tag is Representation.STABLE:
        g = sample_gamma(GammaParams(r, lam), rng, size)
        s = sample_stable_onesided(gamma, rng, size)
        e = rng.standard_exponential(size)
        return g ** inv_g * s / e
    if tag is Representation.WEIBULL_RATIO:
        w1 = sample_weibull(gamma, rng, size)
        w2 = sample_weibull(gamma, rng, size)
        z = sample_negbin_odds(r, lam, rng, size)
        return (w1 / w2) / z ** inv_g
    if tag is Representation.PARETO_RATIO:
        u = rng.random(size)
        pareto = u / (1.0 - u)  # P(Pi > x) = 1/(1+x)
        ratio = sample_stable_ratio(gamma, rng, size)
        z = sample_negbin_odds(r, lam, rng, size)
        return pareto * ratio / z ** inv_g
    if tag is Representation.FOLDED_NORMAL:
        half_normal = np.abs(rng.standard_normal(size))
        e1 = rng.standard_exponential(size)
        ratio = sample_stable_ratio(gamma, rng, size)
        e2 = rng.standard_exponential(size)
        z = sample_negbin_odds(r, lam, rng, size)
        return half_normal * np.sqrt(2.0 * e1) * ratio / (e2 * z ** inv_g)
    if tag is Representation.MIXED_EXPONENTIAL:
        e = rng.standard_exponential(size)
        rate_e = rng.standard_exponential(size)
        ratio = sample_stable_ratio(gamma, rng, size)
        z = sample_negbin_odds(r, lam, rng, size)
        return e / (rate_e * ratio * z ** inv_g)
    raise ValueError(f"unknown representation {tag!r}")  # pragma: no cover


def simulate_prelimit_max(n: int, params: ModelParams, q: float, pareto_gamma: float, rng, size=None):
    """Scaled maximum of a negative-binomial number of Pareto variates.

    Draws a count N from the negative binomial law with shape ``params.r``
    and success probability p_n = min(q, lam/n), then the maximum of N
    i.i.d. Pareto variates (d.f. 1 - x^-pareto_gamma on x >= 1) divided by
    n^(1/pareto_gamma).  As n grows the output converges in distribution to
    the limit law with parameters (params.r, params.lam, pareto_gamma).
    An empty maximum (N = 0) is recorded as 0; its probability vanishes as
    n grows, and dropping the atom would bias small-n comparisons.

    The maximum is drawn exactly by inversion: the largest of N uniforms is
    U^(1/N), so max{X_1..X_N} = (1 - U^(1/N))^(-1/pareto_gamma).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie in (0, 1), got {q!r}")
    if pareto_gamma <= 0.0:
        raise ValueError(f"pareto_gamma must be > 0, got {pareto_gamma!r}")
    rng = _gen(rng)
    p_n = min(q, params.lam / n)
    counts = sample_negbin(NegBinParams(params.r, p_n), rng, size)
    u = rng.random(size)
    counts_arr = np.asarray(counts, dtype=float)
    scale = n ** (1.0 / pareto_gamma)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = -np.expm1(np.log(u) / counts_arr)  # 1 - U^(1/N), exact for large N
        out = np.where(counts_arr > 0.0, tail ** (-1.0 / pareto_gamma) / scale, 0.0)
    return _maybe_scalar_like(out, size)
