"""The compiled and pure-python kernels must agree bit for bit: they run the
same butterfly pairing and the same per-column accumulation order."""

import numpy as np
import pytest

from twsketch import _backend, _kernels_py

try:
    from twsketch import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(_kernels is None,
                                    reason="compiled extension not built")


def test_backend_is_reported():
    assert _backend.BACKEND in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("m,d", [(1, 1), (2, 3), (64, 5), (1024, 4)])
def test_fwht_backends_bit_identical(m, d):
    rng = np.random.default_rng(m * 31 + d)
    a = np.asfortranarray(rng.standard_normal((m, d)))
    b = a.copy(order="F")
    _kernels.fwht_f64(a)
    _kernels_py.fwht_f64(b)
    np.testing.assert_array_equal(a, b)


@needs_compiled
@pytest.mark.parametrize("n,d,k", [(1, 1, 1), (100, 3, 7), (5000, 4, 32)])
def test_countsketch_backends_bit_identical(n, d, k):
    rng = np.random.default_rng(n + d + k)
    a = np.asfortranarray(rng.standard_normal((n, d)))
    rows = rng.integers(0, k, size=n)
    signs = (rng.integers(0, 2, size=n) * 2 - 1).astype(np.float64)
    out1 = np.zeros((k, d), order="F")
    out2 = np.zeros((k, d), order="F")
    _kernels.countsketch_f64(a, rows, signs, out1)
    _kernels_py.countsketch_f64(a, rows, signs, out2)
    np.testing.assert_array_equal(out1, out2)


@needs_compiled
def test_fwht_backends_match_on_large_column(benchmark_size=2**15):
    rng = np.random.default_rng(7)
    a = np.asfortranarray(rng.standard_normal((benchmark_size, 2)))
    b = a.copy(order="F")
    _kernels.fwht_f64(a)
    _kernels_py.fwht_f64(b)
    np.testing.assert_array_equal(a, b)


def test_pure_python_env_override(monkeypatch):
    # the selector honors TWSKETCH_PURE_PYTHON at import time
    import importlib
    import twsketch._backend as backend_module

    monkeypatch.setenv("TWSKETCH_PURE_PYTHON", "1")
    reloaded = importlib.reload(backend_module)
    try:
        assert reloaded.BACKEND == "python"
    finally:
        monkeypatch.delenv("TWSKETCH_PURE_PYTHON")
        importlib.reload(backend_module)
