"""Iterative least squares with a sketched preconditioner.

The basic iteration

    beta_{t+1} = beta_t + (Xs^T Xs)^{-1} X^T (y - X beta_t),   Xs = S X,

converges if and only if lambda_max((Xs^T Xs)^{-1} X^T X) < 2. The
preconditioner Gram matrix is factorized once (Cholesky) and reused; each
step costs one n x d multiply pair plus a d x d triangular solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import DomainError, RankError, ShapeError
from .matrix import DenseMatrix
from .rmt import convergence_prob_approx
from .rng import child_seed
from .sketch import SketchKind, SketchSpec, apply_sketch, build_sketch

DEFAULT_MAX_STEPS = 2000
DEFAULT_GRAD_TOL = 1e-6

# A gradient norm this many times above the starting one cannot recover:
# every mode of a convergent iteration decays monotonically, so once the
# gradient has blown up the run is declared divergent and stopped early.
_DIVERGENCE_RATIO = 1e10

_KIND_CODE = {kind: i for i, kind in enumerate(SketchKind)}


@dataclass(frozen=True)
class LeastSquaresProblem:
    """Design matrix X (n x d, full column rank, n > d) and response y."""

    X: DenseMatrix
    y: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=np.float64).ravel()
        if y.size != self.X.n_rows:
            raise ShapeError(
                f"response has {y.size} entries for {self.X.n_rows} rows"
            )
        if not np.isfinite(y).all():
            raise DomainError("response entries must be finite")
        if self.X.n_rows <= self.X.n_cols:
            raise DomainError(
                f"need n > d, got n={self.X.n_rows}, d={self.X.n_cols}"
            )
        s = np.linalg.svd(self.X.array, compute_uv=False)
        if s[0] <= 0.0 or s[-1] / s[0] < 1e-12:
            raise RankError("design matrix is numerically rank deficient")
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.n_rows

    @property
    def d(self) -> int:
        return self.X.n_cols


@dataclass
class SolveReport:
    """Outcome of one preconditioned solve."""

    converged: bool
    steps: int
    grad_norms: np.ndarray
    beta: np.ndarray
    spec: SketchSpec | None = None
    diagnostic: str = ""


def iterate_least_squares(X: np.ndarray, y: np.ndarray, gram_factor,
                          max_steps: int = DEFAULT_MAX_STEPS,
                          grad_tol: float = DEFAULT_GRAD_TOL,
                          beta0: np.ndarray | None = None,
                          spec: SketchSpec | None = None) -> SolveReport:
    """Run the basic iteration with an already-factorized preconditioner.

    ``gram_factor`` is a ``scipy.linalg.cho_factor`` result for the
    preconditioner Gram matrix. Convergence is declared when the gradient
    norm ||X^T (y - X beta)|| drops below ``grad_tol`` at any step.
    """
    d = X.shape[1]
    beta = np.zeros(d) if beta0 is None else np.asarray(beta0, dtype=np.float64).copy()
    grad_norms = []
    g = X.T @ (y - X @ beta)
    gnorm = float(np.linalg.norm(g))
    grad_norms.append(gnorm)
    blowup = _DIVERGENCE_RATIO * (gnorm + 1.0)
    steps = 0
    while True:
        if gnorm < grad_tol:
            return SolveReport(True, steps, np.array(grad_norms), beta, spec)
        if not math.isfinite(gnorm) or gnorm > blowup:
            return SolveReport(False, steps, np.array(grad_norms), beta, spec,
                               diagnostic="gradient diverged")
        if steps >= max_steps:
            return SolveReport(False, steps, np.array(grad_norms), beta, spec,
                               diagnostic="step limit reached")
        beta += cho_solve(gram_factor, g, check_finite=False)
        steps += 1
        g = X.T @ (y - X @ beta)
        gnorm = float(np.linalg.norm(g))
        grad_norms.append(gnorm)


def iterate_gram(K: np.ndarray, g0: np.ndarray, gram_factor,
                 max_steps: int = DEFAULT_MAX_STEPS,
                 grad_tol: float = DEFAULT_GRAD_TOL,
                 spec: SketchSpec | None = None) -> SolveReport:
    """Same iteration as :func:`iterate_least_squares`, driven through the
    Gram matrix K = X^T X and initial gradient g0 = X^T y.

    The update g <- g - K P^{-1} g is algebraically identical to recomputing
    X^T (y - X beta) each step but costs O(d^2) instead of O(n d), which is
    what makes large replicated convergence experiments affordable.
    """
    beta = np.zeros(K.shape[0])
    g = np.asarray(g0, dtype=np.float64).copy()
    gnorm = float(np.linalg.norm(g))
    grad_norms = [gnorm]
    blowup = _DIVERGENCE_RATIO * (gnorm + 1.0)
    steps = 0
    while True:
        if gnorm < grad_tol:
            return SolveReport(True, steps, np.array(grad_norms), beta, spec)
        if not math.isfinite(gnorm) or gnorm > blowup:
            return SolveReport(False, steps, np.array(grad_norms), beta, spec,
                               diagnostic="gradient diverged")
        if steps >= max_steps:
            return SolveReport(False, steps, np.array(grad_norms), beta, spec,
                               diagnostic="step limit reached")
        delta = cho_solve(gram_factor, g, check_finite=False)
        beta += delta
        g -= K @ delta
        steps += 1
        gnorm = float(np.linalg.norm(g))
        grad_norms.append(gnorm)


def sketched_solve(prob: LeastSquaresProblem, spec: SketchSpec,
                   max_steps: int = DEFAULT_MAX_STEPS,
                   grad_tol: float = DEFAULT_GRAD_TOL,
                   beta0: np.ndarray | None = None) -> SolveReport:
    """Solve the least-squares problem with a freshly sketched preconditioner.

    Forms Xs = S X once, factorizes Xs^T Xs once, and iterates from
    beta = 0 (configurable). A numerically singular preconditioner is
    reported as non-convergence with a diagnostic rather than raised.
    """
    if spec.k < prob.d:
        raise DomainError(f"solver needs k >= d, got k={spec.k}, d={prob.d}")
    if max_steps < 1:
        raise DomainError(f"need max_steps >= 1, got {max_steps}")
    if not grad_tol > 0:
        raise DomainError(f"need grad_tol > 0, got {grad_tol}")
    X = prob.X.array
    Xs = apply_sketch(build_sketch(spec, prob.n), prob.X).array
    gram = Xs.T @ Xs
    try:
        factor = cho_factor(gram, lower=True, check_finite=True)
    except (LinAlgError, ValueError):
        g0 = float(np.linalg.norm(X.T @ prob.y))
        return SolveReport(False, 0, np.array([g0]), np.zeros(prob.d), spec,
                           diagnostic="preconditioner numerically singular")
    return iterate_least_squares(X, prob.y, factor, max_steps=max_steps,
                                 grad_tol=grad_tol, beta0=beta0, spec=spec)


def exact_solve(prob: LeastSquaresProblem) -> np.ndarray:
    """Reference solution via a numerically stable orthogonal factorization."""
    beta, _, rank, _ = np.linalg.lstsq(prob.X.array, prob.y, rcond=None)
    if rank < prob.d:
        raise RankError(f"design matrix has rank {rank} < d = {prob.d}")
    return beta


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054
                    ) -> tuple[float, float]:
    """Wilson 95% score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError("need at least one trial")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


@dataclass(frozen=True)
class ConvergenceRate:
    """Empirical convergence rate for one (kind, k) condition."""

    kind: str
    k: int
    converged: int
    B: int
    rate: float
    lo: float
    hi: float
    gamma_hat: float


def convergence_experiment(prob: LeastSquaresProblem, kinds, k_grid, B: int,
                           seed: int = 0,
                           max_steps: int = DEFAULT_MAX_STEPS,
                           grad_tol: float = DEFAULT_GRAD_TOL,
                           gaussian_direct: bool = False) -> list[ConvergenceRate]:
    """Empirical convergence rates over B seeded runs per (kind, k).

    Returns one row per condition with the Wilson 95% interval and the
    Tracy-Widom prediction gamma_hat alongside. Replicates use seeds derived
    from (seed, kind, k, b), so conditions can be evaluated in any order.

    Each replicate builds and applies a real sketch; the iteration itself
    runs through :func:`iterate_gram` with X^T X computed once for the whole
    experiment, which is exact for the convergence decision and removes the
    per-step O(n d) cost.

    With ``gaussian_direct=True`` the Gaussian kind samples its
    preconditioner Gram matrix straight from the pivotal law
    (Xs^T Xs has the distribution of M^T W M with W ~ Wishart(k, I_d/k) and
    M = diag(s) V^T from the SVD of X), skipping the k x n coefficient
    generation. This is distributionally exact for the Gaussian kind only;
    the other kinds always sketch for real.
    """
    B = int(B)
    if B < 1:
        raise DomainError(f"need B >= 1, got B={B}")
    kinds = [SketchKind.parse(kind) for kind in kinds]
    k_grid = [int(k) for k in k_grid]
    for k in k_grid:
        if k < prob.d:
            raise DomainError(f"every k must be >= d = {prob.d}, got {k}")
    K = prob.X.array.T @ prob.X.array
    g0 = prob.X.array.T @ prob.y
    M = None
    if gaussian_direct and any(kind is SketchKind.GAUSSIAN for kind in kinds):
        _, s, vt = np.linalg.svd(prob.X.array, full_matrices=False)
        M = s[:, None] * vt
    rows = []
    for kind in kinds:
        for k in k_grid:
            wins = 0
            for b in range(B):
                rep_seed = child_seed(seed, _KIND_CODE[kind], k, b)
                if kind is SketchKind.GAUSSIAN and M is not None:
                    G = np.random.Generator(
                        np.random.PCG64(np.random.SeedSequence(rep_seed))
                    ).standard_normal((k, prob.d))
                    gram = M.T @ ((G.T @ G) / k) @ M
                else:
                    spec = SketchSpec(kind=kind, k=k, seed=rep_seed)
                    Xs = apply_sketch(build_sketch(spec, prob.n), prob.X).array
                    gram = Xs.T @ Xs
                try:
                    factor = cho_factor(gram, lower=True, check_finite=True)
                except (LinAlgError, ValueError):
                    continue
                report = iterate_gram(K, g0, factor, max_steps=max_steps,
                                      grad_tol=grad_tol)
                wins += bool(report.converged)
            lo, hi = wilson_interval(wins, B)
            rows.append(ConvergenceRate(
                kind=kind.value, k=k, converged=wins, B=B, rate=wins / B,
                lo=lo, hi=hi, gamma_hat=convergence_prob_approx(k, prob.d),
            ))
    return rows
