"""Monte-Carlo machinery for embedding probabilities.

Simulates distortion factors eps = sigma_max(I_d - U^T S^T S U) either by
sketching an orthonormal factor U directly or through the Wishart shortcut
(for the Gaussian sketch, U^T S^T S U ~ Wishart(k, I_d/k) regardless of the
data), and provides leverage diagnostics for universality checks.

Trials are seeded per index from the master seed, so results do not depend
on execution order and chunked evaluation is safe.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RankError, ShapeError
from .matrix import DenseMatrix
from .rng import child_generator, child_seed
from .sketch import SketchKind, SketchOperator, SketchSpec, apply_sketch, build_sketch

ORTHONORMAL_TOL = 1e-8
RANK_TOL = 1e-12

# Cap on the entries generated per chunk of Wishart trials (~128 MB).
_TRIAL_CHUNK_ENTRIES = 1 << 24


class OrthonormalFactor:
    """An n x d matrix with orthonormal columns (U^T U = I to 1e-8)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: DenseMatrix):
        gram = matrix.array.T @ matrix.array
        dev = np.max(np.abs(gram - np.eye(matrix.n_cols)))
        if dev > ORTHONORMAL_TOL:
            raise DomainError(
                f"columns are not orthonormal: max |U^T U - I| = {dev:.3e}"
            )
        self.matrix = matrix

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols


def thin_svd_factor(A: DenseMatrix) -> OrthonormalFactor:
    """Left singular vectors of a full-column-rank matrix.

    Raises RankError when sigma_min/sigma_max < 1e-12.
    """
    u, s, _ = np.linalg.svd(A.array, full_matrices=False)
    if s[0] <= 0.0 or s[-1] / s[0] < RANK_TOL:
        raise RankError(
            f"matrix is numerically rank deficient: sigma ratio "
            f"{0.0 if s[0] <= 0 else s[-1] / s[0]:.3e}"
        )
    return OrthonormalFactor(DenseMatrix._wrap(np.asfortranarray(u)))


def distortion(U: OrthonormalFactor, S: SketchOperator) -> float:
    """Distortion factor sigma_max(I_d - U^T S^T S U) of one realized sketch.

    Computed as max(|1 - lambda_min(M)|, |1 - lambda_max(M)|) from the
    extreme eigenvalues of the d x d matrix M = (SU)^T (SU).
    """
    if S.n != U.n_rows:
        raise ShapeError(f"operator expects {S.n} rows, factor has {U.n_rows}")
    B = apply_sketch(S, U.matrix).array
    M = B.T @ B
    w = np.linalg.eigvalsh(M)
    return float(max(abs(1.0 - w[0]), abs(1.0 - w[-1])))


@dataclass(frozen=True)
class EmbeddingTrialSet:
    """B simulated distortion factors with their provenance."""

    eps_samples: np.ndarray
    kind: str
    k: int
    d: int
    n: int | None
    seed: int

    def __post_init__(self):
        eps = np.asarray(self.eps_samples, dtype=np.float64)
        if eps.ndim != 1 or eps.size < 1:
            raise DomainError("eps_samples must be a non-empty vector")
        if not np.isfinite(eps).all() or (eps < 0).any():
            raise DomainError("distortion samples must be finite and nonnegative")
        object.__setattr__(self, "eps_samples", eps)

    @property
    def B(self) -> int:
        return int(self.eps_samples.size)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["trial", "eps"])
            for b, e in enumerate(self.eps_samples):
                writer.writerow([b, repr(float(e))])

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "d": self.d,
            "n": self.n,
            "seed": self.seed,
            "B": self.B,
            "eps_samples": [float(e) for e in self.eps_samples],
        }

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def from_dict(cls, payload: dict) -> "EmbeddingTrialSet":
        return cls(
            eps_samples=np.asarray(payload["eps_samples"], dtype=np.float64),
            kind=payload["kind"],
            k=int(payload["k"]),
            d=int(payload["d"]),
            n=None if payload.get("n") is None else int(payload["n"]),
            seed=int(payload["seed"]),
        )

    @classmethod
    def read_json(cls, path) -> "EmbeddingTrialSet":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def simulate_wishart_trials(k: int, d: int, B: int, seed: int = 0) -> EmbeddingTrialSet:
    """Distortion samples from the pivotal Wishart(k, I_d/k) law.

    Each trial draws a k x d standard normal G, forms W = G^T G / k and
    records sigma_max(I - W). This is the exact law of the Gaussian sketch
    for any source data, so it doubles as the Monte-Carlo oracle for the
    Tracy-Widom approximation.
    """
    k, d, B = int(k), int(d), int(B)
    if not k >= d >= 1:
        raise DomainError(f"need k >= d >= 1, got k={k}, d={d}")
    if B < 1:
        raise DomainError(f"need B >= 1, got B={B}")
    eps = np.empty(B)
    chunk = max(1, min(B, _TRIAL_CHUNK_ENTRIES // (k * d)))
    for start in range(0, B, chunk):
        stop = min(B, start + chunk)
        G = np.stack(
            [child_generator(seed, b).standard_normal((k, d)) for b in range(start, stop)]
        )
        W = (G.transpose(0, 2, 1) @ G) / k
        w = np.linalg.eigvalsh(W)
        eps[start:stop] = np.maximum(np.abs(1.0 - w[:, 0]), np.abs(1.0 - w[:, -1]))
    return EmbeddingTrialSet(eps, kind="wishart", k=k, d=d, n=None, seed=seed)


def sketch_embedding_trials(U: OrthonormalFactor, kind, k: int, B: int,
                            seed: int = 0) -> EmbeddingTrialSet:
    """B independent sketches of U, recording the distortion of each.

    Every trial builds a fresh operator from a per-trial derived seed and is
    independent of the others given the master seed.
    """
    kind = SketchKind.parse(kind)
    k, B = int(k), int(B)
    if k < 1:
        raise DomainError(f"need k >= 1, got k={k}")
    if B < 1:
        raise DomainError(f"need B >= 1, got B={B}")
    eps = np.empty(B)
    for b in range(B):
        spec = SketchSpec(kind=kind, k=k, seed=child_seed(seed, b))
        eps[b] = distortion(U, build_sketch(spec, U.n_rows))
    return EmbeddingTrialSet(
        eps, kind=kind.value, k=k, d=U.n_cols, n=U.n_rows, seed=seed
    )


def empirical_embedding_cdf(trials: EmbeddingTrialSet, eps_grid) -> np.ndarray:
    """Monte-Carlo estimate (1/B) #{b : eps_b <= eps} at each grid point."""
    grid = np.asarray(eps_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size < 1:
        raise DomainError("eps grid must be a non-empty vector")
    if (np.diff(grid) < 0).any():
        raise DomainError("eps grid must be ascending")
    samples = np.sort(trials.eps_samples)
    return np.searchsorted(samples, grid, side="right") / samples.size


@dataclass(frozen=True)
class LeverageSummary:
    """Row leverage diagnostics of an orthonormal factor."""

    max_leverage: float
    mean_leverage: float
    histogram_counts: np.ndarray
    histogram_edges: np.ndarray


def leverage_summary(U: OrthonormalFactor, bins: int = 20) -> LeverageSummary:
    """Max, mean and histogram of the squared row norms of U.

    The mean is d/n by the trace identity; the max is always >= d/n.
    """
    lev = np.einsum("ij,ij->i", U.matrix.array, U.matrix.array)
    counts, edges = np.histogram(lev, bins=bins, range=(0.0, float(lev.max())))
    return LeverageSummary(
        max_leverage=float(lev.max()),
        mean_leverage=float(lev.mean()),
        histogram_counts=counts,
        histogram_edges=edges,
    )


def bootstrap_rows(A: DenseMatrix, factor: int, seed: int = 0) -> DenseMatrix:
    """Resample the rows of A with replacement, factor * n rows in total.

    factor = 1 is a plain bootstrap (still resamples). Larger factors mimic
    growing n while keeping the column space, which drives the maximum
    leverage score down.
    """
    factor = int(factor)
    if factor < 1:
        raise DomainError(f"bootstrap factor must be >= 1, got {factor}")
    rng = child_generator(seed)
    idx = rng.integers(0, A.n_rows, size=factor * A.n_rows)
    return DenseMatrix._wrap(np.asfortranarray(A.array[idx, :]))
