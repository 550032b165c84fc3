"""Dense column-major matrices with validated construction."""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ShapeError


class DenseMatrix:
    """Immutable dense real matrix stored in column-major (Fortran) order.

    Entries are validated to be finite on construction; the backing array is
    marked read-only so instances can be shared freely across threads.
    """

    __slots__ = ("array",)

    def __init__(self, values):
        arr = np.array(values, dtype=np.float64, order="F", copy=True)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"matrix must have at least one row and column, got {arr.shape}")
        if not np.isfinite(arr).all():
            raise DomainError("matrix entries must be finite (no NaN/Inf)")
        arr.setflags(write=False)
        self.array = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "DenseMatrix":
        # Internal fast path for freshly computed results; skips the finite scan.
        if arr.dtype != np.float64 or not arr.flags.f_contiguous:
            arr = np.asfortranarray(arr, dtype=np.float64)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got ndim={arr.ndim}")
        arr.setflags(write=False)
        out = object.__new__(cls)
        out.array = arr
        return out

    @property
    def n_rows(self) -> int:
        return self.array.shape[0]

    @property
    def n_cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def __repr__(self) -> str:
        return f"DenseMatrix({self.n_rows}x{self.n_cols})"
