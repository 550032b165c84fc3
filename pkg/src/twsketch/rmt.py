"""Closed-form asymptotic approximations for sketching success probabilities.

Centering/scaling constants follow Ma (2012) / Johnstone (2001): the
cube-root factor multiplies sigma for the largest eigenvalue, and the
smallest-eigenvalue inner factor is oriented so sigma and tau stay positive.
Both conventions are pinned by the Monte-Carlo calibration tests: the
empirical law of (lambda_max - mu)/sigma over Wishart(k, I_d/k) draws matches
F1 only under this form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tracywidom import tw_cdf

_LOG_HALF = math.log(0.5)


def constants_max(k: int, d: int) -> tuple[float, float]:
    """Centering mu and scaling sigma for the largest eigenvalue of
    Wishart(k, I_d/k)."""
    k, d = int(k), int(d)
    if k < 1 or d < 1:
        raise DomainError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    a = math.sqrt(k - 0.5)
    b = math.sqrt(d - 0.5)
    mu = (a + b) ** 2 / k
    sigma = ((a + b) / k) * (1.0 / a + 1.0 / b) ** (1.0 / 3.0)
    return mu, sigma


def constants_min(k: int, d: int) -> tuple[float, float, float, float]:
    """Constants (mu, sigma, tau, nu) for the log of the smallest eigenvalue.

    Requires d < k; at d = k the centering collapses to zero and the log
    transform is meaningless.
    """
    k, d = int(k), int(d)
    if d < 1:
        raise DomainError(f"need d >= 1, got d={d}")
    if d >= k:
        raise DomainError(f"smallest-eigenvalue constants need d < k, got k={k}, d={d}")
    a = math.sqrt(k - 0.5)
    b = math.sqrt(d - 0.5)
    mu = (a - b) ** 2
    sigma = (a - b) * (1.0 / b - 1.0 / a) ** (1.0 / 3.0)
    tau = sigma / mu
    nu = math.log(mu) - math.log(k) - tau * tau / 8.0
    return mu, sigma, tau, nu


@dataclass(frozen=True)
class TWApproxConstants:
    """All centering/scaling constants for one (k, d) pair."""

    k: int
    d: int
    mu_max: float
    sigma_max: float
    mu_min: float
    sigma_min: float
    tau: float
    nu: float

    @classmethod
    def for_dims(cls, k: int, d: int) -> "TWApproxConstants":
        mu_max, sigma_max = constants_max(k, d)
        mu_min, sigma_min, tau, nu = constants_min(k, d)
        return cls(int(k), int(d), mu_max, sigma_max, mu_min, sigma_min, tau, nu)


@dataclass(frozen=True)
class AsymptoticRegime:
    """Aspect ratio d/k of the limiting regime."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")


def embedding_prob_approx(k: int, d: int, eps):
    """Asymptotic probability that a sketch of size k embeds a rank-d subspace
    with distortion at most eps.

    Evaluates F1((eps + 1 - mu)/sigma) with the largest-eigenvalue constants.
    Accepts a scalar or array eps (all entries must be > 0).
    """
    eps_arr = np.asarray(eps, dtype=np.float64)
    if np.isnan(eps_arr).any() or (eps_arr <= 0).any():
        raise DomainError("eps must be positive")
    mu, sigma = constants_max(k, d)
    return tw_cdf((eps_arr + 1.0 - mu) / sigma)


def convergence_prob_approx(k: int, d: int) -> float:
    """Asymptotic probability that the sketched-preconditioner iteration
    converges: F1((nu - log(1/2))/tau)."""
    _, _, tau, nu = constants_min(k, d)
    return float(tw_cdf((nu - _LOG_HALF) / tau))


def eigenvalue_limits(alpha: float) -> tuple[float, float]:
    """In-probability limits ((1-sqrt(alpha))^2, (1+sqrt(alpha))^2) of the
    extreme eigenvalues of Wishart(k, I_d/k) as d/k -> alpha."""
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0 or math.isnan(alpha):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    r = math.sqrt(alpha)
    return (1.0 - r) ** 2, (1.0 + r) ** 2


@dataclass(frozen=True)
class UniformEmbeddingBound:
    """Lower bound on the uniform-sketch embedding probability plus the
    singular-value window it certifies. Qualitative only: the absolute
    constant c is not pinned down by the theory."""

    probability: float
    window_low: float
    window_high: float


def uniform_embedding_lower_bound(m: float, n: int, k: int, d: int, t: float,
                                  c: float = 1.0) -> UniformEmbeddingBound:
    """Leverage-based bound for uniform subsampling.

    With max leverage at most m, all singular values of the sketched
    orthonormal factor fall in 1 +- t*sqrt(m n / k) with probability at
    least 1 - 2 d exp(-c t^2).
    """
    n, k, d = int(n), int(k), int(d)
    if n < 1 or k < 1 or d < 1:
        raise DomainError("n, k, d must be >= 1")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if c <= 0:
        raise DomainError(f"c must be > 0, got {c}")
    if m < d / n:
        raise DomainError(
            f"max leverage bound m={m} is below the mean leverage d/n={d / n}"
        )
    prob = max(0.0, 1.0 - 2.0 * d * math.exp(-c * t * t))
    half = t * math.sqrt(m * n / k)
    return UniformEmbeddingBound(prob, 1.0 - half, 1.0 + half)
