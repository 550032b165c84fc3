"""Pure-numpy fallback for the compiled kernels.

Uses the same butterfly pairing and the same per-column accumulation order as
the extension, so both backends produce bit-identical output.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def fwht_f64(a: np.ndarray) -> None:
    """In-place unnormalized Walsh-Hadamard transform of every column.

    `a` must be Fortran-contiguous float64 with a power-of-two row count.
    """
    m = a.shape[0]
    at = a.T  # C-contiguous (d, m) view of the column-major buffer
    h = 1
    while h < m:
        r = at.reshape(a.shape[1], m // (2 * h), 2 * h)
        top = r[..., :h].copy()
        r[..., :h] += r[..., h:]
        np.subtract(top, r[..., h:], out=r[..., h:])
        h *= 2


def countsketch_f64(a: np.ndarray, rows: np.ndarray, signs: np.ndarray,
                    out: np.ndarray) -> None:
    """Accumulate out[rows[i], c] += signs[i] * a[i, c] column by column."""
    k = out.shape[0]
    for c in range(a.shape[1]):
        out[:, c] += np.bincount(rows, weights=signs * a[:, c], minlength=k)
