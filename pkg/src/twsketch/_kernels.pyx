# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: in-place Walsh-Hadamard butterflies and CountSketch
accumulation over column-major matrices."""

BACKEND_NAME = "compiled"


cpdef void fwht_f64(double[::1, :] a):
    """In-place unnormalized Walsh-Hadamard transform of every column.

    a.shape[0] must be a power of two (checked by callers).
    """
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t c, h, i, j
    cdef double x, y
    for c in range(d):
        h = 1
        while h < m:
            i = 0
            while i < m:
                for j in range(i, i + h):
                    x = a[j, c]
                    y = a[j + h, c]
                    a[j, c] = x + y
                    a[j + h, c] = x - y
                i += 2 * h
            h *= 2


cpdef void countsketch_f64(const double[::1, :] a, const long long[::1] rows,
                           const double[::1] signs, double[::1, :] out):
    """Accumulate out[rows[i], c] += signs[i] * a[i, c], streaming each column."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t c, i
    for c in range(d):
        for i in range(n):
            out[rows[i], c] += signs[i] * a[i, c]
