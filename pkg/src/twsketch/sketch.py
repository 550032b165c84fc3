"""Data-oblivious random projections: Gaussian, Hadamard, Clarkson-Woodruff, uniform.

A sketch is a random k x n linear map S compressing an n-row dataset to k
pseudo-observations. All four constructions here are data-oblivious (the
distribution of S never looks at the data) and are realized deterministically
from a 64-bit seed, so repeated construction yields bit-identical output.

Costs of applying S to an n x d matrix:

    Gaussian           O(n d k)          dense multiply
    Hadamard           O(n d log n_pad)  fast Walsh-Hadamard per column
    Clarkson-Woodruff  O(n d)            one streaming pass
    Uniform            O(k d)            row gather
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._backend import kernels
from .errors import DomainError, ShapeError
from .matrix import DenseMatrix
from .rng import check_seed

# Rows of a streamed Gaussian block are capped so the realized coefficients
# never need more than ~64 MB at a time.
_GAUSS_CHUNK_ENTRIES = 1 << 23

# explicit_matrix refuses to materialize Hadamard matrices beyond this order.
_EXPLICIT_HADAMARD_LIMIT = 1 << 13


class SketchKind(str, Enum):
    GAUSSIAN = "gaussian"
    HADAMARD = "hadamard"
    CLARKSON_WOODRUFF = "clarkson-woodruff"
    UNIFORM = "uniform"

    @classmethod
    def parse(cls, name: "str | SketchKind") -> "SketchKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        if key in ("cw", "countsketch", "count-sketch"):
            key = "clarkson-woodruff"
        try:
            return cls(key)
        except ValueError:
            raise DomainError(
                f"unknown sketch kind {name!r}; expected one of "
                f"{[k.value for k in cls]} (alias: cw)"
            ) from None


@dataclass(frozen=True)
class SketchSpec:
    """Which sketch to draw: kind, target row count k, and a 64-bit seed."""

    kind: SketchKind
    k: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", SketchKind.parse(self.kind))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "seed", check_seed(self.seed))
        if self.k < 1:
            raise DomainError(f"sketch size k must be >= 1, got {self.k}")


def _rademacher(rng: np.random.Generator, size: int) -> np.ndarray:
    return (rng.integers(0, 2, size=size) * 2 - 1).astype(np.float64)


@dataclass(frozen=True)
class SketchOperator:
    """A realized sketching matrix for a fixed source row count n.

    Only the randomness needed by the kind is stored: the Gaussian kind
    streams its dense coefficients from the seed on every apply, the Hadamard
    kind keeps a sign vector plus k sampled row indices of the padded
    Hadamard matrix, Clarkson-Woodruff keeps one target row and sign per
    source row, and the uniform kind keeps k sampled row indices.

    Instances are immutable; ``apply`` is safe to call concurrently.
    """

    spec: SketchSpec
    n: int
    row_indices: np.ndarray | None = None
    signs: np.ndarray | None = None
    target_rows: np.ndarray | None = None
    n_pad: int | None = None

    def apply(self, A: DenseMatrix) -> DenseMatrix:
        return apply_sketch(self, A)

    def explicit_matrix(self) -> np.ndarray:
        """Materialize S as a dense k x n array (inspection and tests only)."""
        k, n = self.spec.k, self.n
        kind = self.spec.kind
        if kind is SketchKind.GAUSSIAN:
            rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.spec.seed)))
            return rng.standard_normal((k, n)) / math.sqrt(k)
        if kind is SketchKind.UNIFORM:
            S = np.zeros((k, n))
            S[np.arange(k), self.row_indices] = math.sqrt(n / k)
            return S
        if kind is SketchKind.CLARKSON_WOODRUFF:
            S = np.zeros((k, n))
            S[self.target_rows, np.arange(n)] = self.signs
            return S
        if self.n_pad > _EXPLICIT_HADAMARD_LIMIT:
            raise DomainError(
                f"explicit Hadamard matrix of order {self.n_pad} is too large to materialize"
            )
        H = hadamard_matrix(self.n_pad)
        return H[self.row_indices][:, :n] * self.signs[None, :] / math.sqrt(k)


def build_sketch(spec: SketchSpec, n: int) -> SketchOperator:
    """Realize a sketching operator for n source rows.

    Parameters
    ----------
    spec : SketchSpec
        Sketch kind, target rows k, and seed.
    n : int
        Number of rows of the matrices the operator will be applied to.

    Returns
    -------
    SketchOperator
        Deterministic in ``(spec, n)``: equal inputs give bit-identical
        realized operators. For the Hadamard kind the source is implicitly
        zero-padded to ``n_pad``, the smallest power of two >= n, and the k
        rows are sampled from all ``n_pad`` rows of the Hadamard matrix.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"source row count n must be >= 1, got {n}")
    kind = spec.kind
    if kind is SketchKind.GAUSSIAN:
        # Coefficients are streamed from the seed at apply time.
        return SketchOperator(spec=spec, n=n)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    if kind is SketchKind.HADAMARD:
        n_pad = 1 << (n - 1).bit_length()
        signs = _rademacher(rng, n)
        rows = rng.integers(0, n_pad, size=spec.k)
        return SketchOperator(spec=spec, n=n, row_indices=rows, signs=signs, n_pad=n_pad)
    if kind is SketchKind.CLARKSON_WOODRUFF:
        targets = rng.integers(0, spec.k, size=n)
        signs = _rademacher(rng, n)
        return SketchOperator(spec=spec, n=n, target_rows=targets, signs=signs)
    rows = rng.integers(0, n, size=spec.k)
    return SketchOperator(spec=spec, n=n, row_indices=rows)


def apply_sketch(op: SketchOperator, A: DenseMatrix) -> DenseMatrix:
    """Compute the sketched matrix S A.

    Parameters
    ----------
    op : SketchOperator
        Realized operator; ``op.n`` must equal ``A.n_rows``.
    A : DenseMatrix
        Source matrix, n x d.

    Returns
    -------
    DenseMatrix
        The k x d sketched matrix. The Gaussian path is a dense multiply,
        the Hadamard path runs the in-place fast Walsh-Hadamard transform on
        a zero-padded copy, Clarkson-Woodruff streams the rows once, and the
        uniform path gathers k rows scaled by sqrt(n/k).
    """
    if A.n_rows != op.n:
        raise ShapeError(f"operator expects {op.n} rows, matrix has {A.n_rows}")
    kind = op.spec.kind
    if kind is SketchKind.GAUSSIAN:
        out = _apply_gaussian(op, A.array)
    elif kind is SketchKind.HADAMARD:
        out = _apply_hadamard(op, A.array)
    elif kind is SketchKind.CLARKSON_WOODRUFF:
        out = _apply_clarkson_woodruff(op, A.array)
    else:
        out = A.array[op.row_indices, :] * math.sqrt(op.n / op.spec.k)
    return DenseMatrix._wrap(out)


def _apply_gaussian(op: SketchOperator, arr: np.ndarray) -> np.ndarray:
    k, n = op.spec.k, op.n
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(op.spec.seed)))
    out = np.empty((k, arr.shape[1]), order="F")
    step = max(1, min(k, _GAUSS_CHUNK_ENTRIES // n))
    for start in range(0, k, step):
        stop = min(k, start + step)
        out[start:stop, :] = rng.standard_normal((stop - start, n)) @ arr
    out *= 1.0 / math.sqrt(k)
    return out


def _apply_hadamard(op: SketchOperator, arr: np.ndarray) -> np.ndarray:
    n, d = arr.shape
    buf = np.zeros((op.n_pad, d), order="F")
    np.multiply(arr, op.signs[:, None], out=buf[:n, :])
    kernels.fwht_f64(buf)
    out = buf[op.row_indices, :]
    out *= 1.0 / math.sqrt(op.spec.k)
    return out


def _apply_clarkson_woodruff(op: SketchOperator, arr: np.ndarray) -> np.ndarray:
    out = np.zeros((op.spec.k, arr.shape[1]), order="F")
    kernels.countsketch_f64(arr, op.target_rows, op.signs, out)
    return out


def fwht_inplace(v: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform of a vector.

    Computes H v for the order-2^m Hadamard matrix with +-1 entries in
    O(2^m * m) time. The input is transformed in place when it is a
    contiguous float64 array; the (possibly converted) result is returned
    either way.

    Raises
    ------
    DomainError
        If the length is not a power of two.
    """
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError(f"expected a 1-d vector, got ndim={arr.ndim}")
    m = arr.shape[0]
    if m < 1 or m & (m - 1):
        raise DomainError(f"vector length must be a power of two, got {m}")
    if not (arr.flags.c_contiguous and arr.flags.writeable):
        arr = arr.copy()
    kernels.fwht_f64(arr.reshape(m, 1))
    return arr


def hadamard_matrix(m: int) -> np.ndarray:
    """Naive order-m Hadamard matrix by the Sylvester doubling construction."""
    if m < 1 or m & (m - 1):
        raise DomainError(f"Hadamard order must be a power of two, got {m}")
    H = np.ones((1, 1))
    while H.shape[0] < m:
        H = np.block([[H, H], [H, -H]])
    return H
