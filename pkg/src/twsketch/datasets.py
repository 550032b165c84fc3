"""Dataset ingestion and synthetic design generators."""

from __future__ import annotations

import csv
import warnings

import numpy as np

from .errors import DataFileError, DomainError
from .matrix import DenseMatrix
from .rng import child_generator, child_seed
from .solver import LeastSquaresProblem

GENERATORS = ("gaussian", "spiked-leverage", "orthonormal-block")

_SPIKED_ROWS = 3


def _locate_parse_error(path, has_header):
    """Slow re-scan after the fast parser failed, to name the bad cell.

    Rows and columns are reported 1-based in file coordinates (a header line
    counts as row 1).
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        width = None
        n_rows = 0
        for i, fields in enumerate(reader, start=1):
            if not fields or (len(fields) == 1 and fields[0].strip() == ""):
                continue
            if has_header and i == 1:
                width = len(fields)
                continue
            if width is None:
                width = len(fields)
            if len(fields) != width:
                raise DataFileError(
                    f"ragged row: expected {width} fields, got {len(fields)}",
                    path=path, row=i,
                )
            for j, cell in enumerate(fields, start=1):
                try:
                    float(cell)
                except ValueError:
                    raise DataFileError(
                        f"non-numeric cell {cell!r}", path=path, row=i, column=j
                    ) from None
            n_rows += 1
    if n_rows == 0:
        raise DataFileError("no data rows", path=path)
    raise DataFileError("could not parse file", path=path)


def load_dataset(path, response=None, has_header: bool = True,
                 intercept: bool = False):
    """Load a rectangular numeric CSV.

    Parameters
    ----------
    path : str or Path
        Comma-separated UTF-8 file with ``.`` decimals and an optional
        header line.
    response : str | int | None
        When given, that column becomes the response y and the rest the
        design X, returned as a LeastSquaresProblem. A string is matched
        against the header; an integer (or integer literal) is a 1-based
        column position. None returns the whole file as a DenseMatrix.
    has_header : bool
        Whether the first line holds column names.
    intercept : bool
        Prepend a column of ones to the design (only with ``response``).

    Raises
    ------
    DataFileError
        Ragged rows, non-numeric or non-finite cells (with 1-based file
        coordinates), or a response column that cannot be resolved.
    """
    names = None
    if has_header:
        with open(path, newline="") as fh:
            first = fh.readline()
        names = [c.strip() for c in first.rstrip("\n").rstrip("\r").split(",")]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)  # empty-input notice
            data = np.loadtxt(path, delimiter=",", skiprows=1 if has_header else 0,
                              dtype=np.float64, ndmin=2)
    except ValueError:
        # Fast parser failed; re-scan to name the offending cell.
        _locate_parse_error(path, has_header)
    if data.size == 0:
        raise DataFileError("no data rows", path=path)
    if not np.isfinite(data).all():
        i, j = np.argwhere(~np.isfinite(data))[0]
        raise DataFileError("non-finite value", path=path,
                            row=int(i) + 1 + int(has_header), column=int(j) + 1)
    if response is None:
        return DenseMatrix._wrap(np.asfortranarray(data))

    col = _resolve_response(response, names, data.shape[1], path)
    y = data[:, col]
    X = np.delete(data, col, axis=1)
    if intercept:
        X = np.hstack([np.ones((X.shape[0], 1)), X])
    if X.shape[1] == 0:
        raise DataFileError("no covariate columns besides the response", path=path)
    return LeastSquaresProblem(X=DenseMatrix._wrap(np.asfortranarray(X)), y=y)


def _resolve_response(response, names, width, path):
    if isinstance(response, str) and names and response in names:
        return names.index(response)
    try:
        pos = int(response)
    except (TypeError, ValueError):
        raise DataFileError(
            f"response column {response!r} not found in header {names}", path=path
        ) from None
    if not 1 <= pos <= width:
        raise DataFileError(
            f"response column {pos} out of range 1..{width}", path=path
        )
    return pos - 1


def synth_dataset(generator: str, n: int, d: int, seed: int = 0) -> DenseMatrix:
    """Synthetic n x d designs with controlled leverage profiles.

    gaussian
        iid standard normal entries; max leverage ~ d/n (low).
    spiked-leverage
        Gaussian plus a few rows scaled by sqrt(n); high max leverage.
    orthonormal-block
        First d rows are a scaled identity, the remaining rows are zero;
        the column space is spanned by d basis rows (max leverage 1).
    """
    n, d = int(n), int(d)
    if generator not in GENERATORS:
        raise DomainError(f"unknown generator {generator!r}; expected one of {GENERATORS}")
    if n <= d or d < 1:
        raise DomainError(f"need n > d >= 1, got n={n}, d={d}")
    rng = child_generator(seed)
    if generator == "gaussian":
        X = rng.standard_normal((n, d))
    elif generator == "spiked-leverage":
        X = rng.standard_normal((n, d))
        X[: min(_SPIKED_ROWS, n - d), :] *= np.sqrt(n)
    else:
        X = np.zeros((n, d))
        X[:d, :] = np.sqrt(n) * np.eye(d)
    return DenseMatrix._wrap(np.asfortranarray(X))


def synth_problem(generator: str, n: int, d: int, seed: int = 0) -> LeastSquaresProblem:
    """Least-squares problem on a synthetic design: y = X beta + unit noise."""
    X = synth_dataset(generator, n, d, seed=child_seed(seed, 0))
    rng = child_generator(seed, 1)
    beta = rng.standard_normal(int(d))
    y = X.array @ beta + rng.standard_normal(int(n))
    return LeastSquaresProblem(X=X, y=y)
