"""Shared Monte-Carlo oracles for the tests.

Extreme eigenvalues of Wishart(k, I_d/k) matrices, sampled with the same
per-trial seed derivation the package uses, plus a one-sample
Kolmogorov-Smirnov distance helper.
"""

from __future__ import annotations

import numpy as np

from twsketch.rng import child_generator

_CHUNK_ENTRIES = 1 << 24


def wishart_extreme_eigs(k, d, B, seed=0):
    """(lambda_min, lambda_max) arrays over B Wishart(k, I_d/k) draws."""
    lmin = np.empty(B)
    lmax = np.empty(B)
    chunk = max(1, min(B, _CHUNK_ENTRIES // (k * d)))
    for start in range(0, B, chunk):
        stop = min(B, start + chunk)
        G = np.stack([child_generator(seed, b).standard_normal((k, d))
                      for b in range(start, stop)])
        W = (G.transpose(0, 2, 1) @ G) / k
        w = np.linalg.eigvalsh(W)
        lmin[start:stop] = w[:, 0]
        lmax[start:stop] = w[:, -1]
    return lmin, lmax


def ks_vs_cdf(samples, cdf):
    """Kolmogorov-Smirnov distance between a sample and a CDF callable."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    F = cdf(x)
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    return float(max(np.max(np.abs(F - hi)), np.max(np.abs(F - lo))))
