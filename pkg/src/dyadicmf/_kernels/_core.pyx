# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot kernels.

Same contracts as ``_fallback.py``.  Outputs must stay bit-identical to
the fallback: the sampler evaluates 0.5 + 0.5*theta*t with t the exact
integer sign product, and cylinder masses multiply factors in ascending
k, exactly as the vectorized code does.  Do not compile with
-ffast-math.
"""

from libc.math cimport ldexp

import numpy as np


def sample_signs(u, int ell, double theta):
    """Turn uniform draws into sign words, one row per word."""
    u = np.ascontiguousarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("u must be 2-d (words, positions)")
    out = np.empty(u.shape, dtype=np.int8)
    if u.shape[1]:
        _sample_signs(u, ell, theta, out)
    return out


cdef void _sample_signs(double[:, ::1] u, int ell, double theta,
                        signed char[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t rows = u.shape[0]
    cdef Py_ssize_t n = u.shape[1]
    cdef Py_ssize_t r, i, k
    cdef int j, t
    cdef double p
    for r in range(rows):
        for i in range(1, n + 1):
            if i % ell:
                p = 0.5
            else:
                k = i // ell
                t = 1
                for j in range(1, ell):
                    t *= out[r, j * k - 1]
                p = 0.5 + 0.5 * theta * t
            out[r, i - 1] = 1 if u[r, i - 1] < p else -1


def cylinder_mass_table(int n, int ell, double theta):
    """Masses of all 2^n cylinders of depth n, indexed by bit pattern."""
    out = np.empty(1 << n, dtype=np.float64)
    _mass_table(n, ell, theta, out)
    return out


cdef void _mass_table(int n, int ell, double theta,
                      double[::1] out) noexcept nogil:
    cdef unsigned long long v, acc
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef int k, j, m = n // ell
    cdef double base = ldexp(1.0, -n)
    cdef double fplus = 1.0 + theta
    cdef double fminus = 1.0 - theta
    cdef double mass
    for v in range(<unsigned long long>size):
        mass = base
        for k in range(1, m + 1):
            acc = (v >> (k - 1)) & 1ULL
            for j in range(2, ell + 1):
                acc ^= (v >> (j * k - 1)) & 1ULL
            mass *= fminus if acc else fplus
        out[v] = mass


def count_constrained(int n):
    """Number of n-bit words with no 1 at both l and 2l, by enumeration."""
    return _count_constrained(n)


cdef long long _count_constrained(int n) noexcept nogil:
    cdef unsigned long long v
    cdef unsigned long long size = 1ULL << n
    cdef int l, half = n // 2
    cdef long long total = 0
    cdef bint ok
    for v in range(size):
        ok = True
        for l in range(1, half + 1):
            if (v >> (l - 1)) & (v >> (2 * l - 1)) & 1ULL:
                ok = False
                break
        if ok:
            total += 1
    return total


def xi_sum_histogram(int n, int ell):
    """Histogram of sum_k xi_k over all 2^n words, entry [s + m]."""
    cdef int m = n // ell
    hist = np.zeros(2 * m + 1, dtype=np.int64)
    _xi_sum_histogram(n, ell, m, hist)
    return hist


cdef void _xi_sum_histogram(int n, int ell, int m,
                            long long[::1] hist) noexcept nogil:
    cdef unsigned long long v, acc
    cdef unsigned long long size = 1ULL << n
    cdef int k, j
    cdef long long s
    for v in range(size):
        s = m
        for k in range(1, m + 1):
            acc = (v >> (k - 1)) & 1ULL
            for j in range(2, ell + 1):
                acc ^= (v >> (j * k - 1)) & 1ULL
            s += 1 - 2 * <long long>acc
        hist[s] += 1
