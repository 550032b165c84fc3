#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from twsketch import _kernels_py

try:
    from twsketch import _kernels
except ImportError:
    _kernels = None

REPS = 5


def best_of(fn, *args):
    times = []
    for _ in range(REPS):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_fwht(m, d):
    rng = np.random.default_rng(0)
    base = np.asfortranarray(rng.standard_normal((m, d)))
    rows = []
    for name, mod in backends():
        buf = base.copy(order="F")
        t = best_of(mod.fwht_f64, buf)
        rows.append((name, t))
    report(f"fwht m={m} d={d}", rows)


def bench_countsketch(n, d, k):
    rng = np.random.default_rng(1)
    a = np.asfortranarray(rng.standard_normal((n, d)))
    tgt = rng.integers(0, k, size=n)
    sgn = (rng.integers(0, 2, size=n) * 2 - 1).astype(np.float64)
    rows = []
    for name, mod in backends():
        out = np.zeros((k, d), order="F")
        t = best_of(mod.countsketch_f64, a, tgt, sgn, out)
        rows.append((name, t))
    report(f"countsketch n={n} d={d} k={k}", rows)


def backends():
    out = [("python", _kernels_py)]
    if _kernels is not None:
        out.insert(0, ("compiled", _kernels))
    return out


def report(label, rows):
    base = dict(rows).get("python")
    parts = []
    for name, t in rows:
        speedup = f" ({base / t:.1f}x vs python)" if name == "compiled" and base else ""
        parts.append(f"{name}: {t * 1e3:8.2f} ms{speedup}")
    print(f"{label:38s} " + "   ".join(parts))


if __name__ == "__main__":
    if _kernels is None:
        print("compiled extension unavailable; timing the fallback only")
    bench_fwht(1 << 14, 10)
    bench_fwht(1 << 17, 10)
    bench_fwht(1 << 17, 100)
    bench_countsketch(100_000, 10, 200)
    bench_countsketch(100_000, 100, 2000)
    bench_countsketch(1_000_000, 10, 2000)
