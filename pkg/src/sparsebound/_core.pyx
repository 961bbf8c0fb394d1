# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled enumeration kernels.

Gray-code walks over sign vectors / subsets: each step flips one
coordinate and updates the running image vector in O(rows), so a full
enumeration over 2^n sign vectors costs O(2^n * rows) instead of
O(2^n * rows * cols). Same contracts as ``_kernels_py``.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


cdef inline int _ctz(unsigned long long x) nogil:
    cdef int c = 0
    while (x & 1) == 0:
        x >>= 1
        c += 1
    return c


def inf_to_1(double[:, ::1] B):
    """max over x in {+-1}^n of ||Bx||_1, n = B.shape[1]."""
    cdef Py_ssize_t m = B.shape[0], n = B.shape[1]
    # transpose once so the flipped column is a contiguous row
    cdef double[:, ::1] BT = np.ascontiguousarray(np.asarray(B).T)
    cdef double[::1] y = np.asarray(B).sum(axis=1)
    cdef double[::1] sign = np.ones(n)
    cdef unsigned long long i, steps = 1ULL << (n - 1)
    cdef Py_ssize_t j, r
    cdef double best, val, d
    with nogil:
        val = 0.0
        for r in range(m):
            val += y[r] if y[r] >= 0.0 else -y[r]
        best = val
        for i in range(1, steps):
            j = _ctz(i)
            sign[j] = -sign[j]
            d = 2.0 * sign[j]
            val = 0.0
            for r in range(m):
                y[r] += d * BT[j, r]
                val += y[r] if y[r] >= 0.0 else -y[r]
            if val > best:
                best = val
    return float(best)


def inf_to_2(double[:, ::1] B):
    """max over x in {+-1}^n of ||Bx||_2, n = B.shape[1]."""
    cdef Py_ssize_t m = B.shape[0], n = B.shape[1]
    cdef double[:, ::1] BT = np.ascontiguousarray(np.asarray(B).T)
    cdef double[::1] y = np.asarray(B).sum(axis=1)
    cdef double[::1] sign = np.ones(n)
    cdef unsigned long long i, steps = 1ULL << (n - 1)
    cdef Py_ssize_t j, r
    cdef double best, val, d
    with nogil:
        val = 0.0
        for r in range(m):
            val += y[r] * y[r]
        best = val
        for i in range(1, steps):
            j = _ctz(i)
            sign[j] = -sign[j]
            d = 2.0 * sign[j]
            val = 0.0
            for r in range(m):
                y[r] += d * BT[j, r]
                val += y[r] * y[r]
            if val > best:
                best = val
    return float(np.sqrt(best))


def cut_norm_pairs(double[:, ::1] B):
    """max over S x T of |sum of the S x T submatrix|, S over rows of B."""
    cdef Py_ssize_t m = B.shape[0], n = B.shape[1]
    cdef double[::1] s = np.zeros(n)
    cdef signed char[::1] inset = np.zeros(m, dtype=np.int8)
    cdef unsigned long long i, steps = 1ULL << m
    cdef Py_ssize_t j, k
    cdef double best = 0.0, pos, neg, d
    with nogil:
        for i in range(1, steps):
            j = _ctz(i)
            inset[j] = 1 - inset[j]
            d = 1.0 if inset[j] else -1.0
            pos = 0.0
            neg = 0.0
            for k in range(n):
                s[k] += d * B[j, k]
                if s[k] >= 0.0:
                    pos += s[k]
                else:
                    neg -= s[k]
            if pos > best:
                best = pos
            if neg > best:
                best = neg
    return float(best)


def cut_norm_graph(double[:, ::1] B):
    """max over S of |sum_{j in S, k not in S} B_jk|, B square."""
    cdef Py_ssize_t v = B.shape[0]
    cdef double[::1] p = np.asarray(B).sum(axis=1)  # B @ (1 - u), u = 0
    cdef double[::1] q = np.zeros(v)                # B^T @ u
    cdef signed char[::1] inset = np.zeros(v, dtype=np.int8)
    cdef unsigned long long i, steps = 1ULL << v
    cdef Py_ssize_t j, k
    cdef double best = 0.0, val = 0.0, sgn, a
    with nogil:
        for i in range(1, steps):
            j = _ctz(i)
            inset[j] = 1 - inset[j]
            sgn = 1.0 if inset[j] else -1.0
            val += sgn * (p[j] - q[j]) - B[j, j]
            for k in range(v):
                p[k] -= sgn * B[k, j]
                q[k] += sgn * B[j, k]
            a = val if val >= 0.0 else -val
            if a > best:
                best = a
    return float(best)
