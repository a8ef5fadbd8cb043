# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backward-induction kernels; same API as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef inline double _q(double alpha, double ab, Py_ssize_t i, Py_ssize_t j) nogil:
    return (j + alpha) / (i + ab)


def state_prob_table(double alpha, double beta, Py_ssize_t n):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] P_arr = np.zeros((n, n))
    cdef double[:, ::1] P = P_arr
    cdef double ab = alpha + beta
    cdef double q, v
    cdef Py_ssize_t i, j
    with nogil:
        P[0, 0] = 1.0
        for i in range(n - 1):
            for j in range(i + 1):
                q = _q(alpha, ab, i, j)
                v = P[i, j]
                P[i + 1, j] += v * (1.0 - q)
                P[i + 1, j + 1] += v * q
    return P_arr


cdef inline void _final_row(double alpha, double ab, Py_ssize_t n, Py_ssize_t x,
                            Py_ssize_t j, double *q, double *up, double *down) nogil:
    q[0] = _q(alpha, ab, n - 1, j)
    up[0] = 1.0 if 2 * j + x > n - 1 else 0.0
    down[0] = 1.0 if 2 * j > n - 1 + x else 0.0


def belief_table(double alpha, double beta, Py_ssize_t n, Py_ssize_t x):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] b_arr = np.zeros((n, n))
    cdef double[:, ::1] b = b_arr
    cdef double ab = alpha + beta
    cdef double q, up, down
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(n):
            _final_row(alpha, ab, n, x, j, &q, &up, &down)
            b[n - 1, j] = q * up + (1.0 - q) * down
        for i in range(n - 2, -1, -1):
            for j in range(i + 1):
                q = _q(alpha, ab, i, j)
                b[i, j] = q * b[i + 1, j + 1] + (1.0 - q) * b[i + 1, j]
    return b_arr


def round_surprise(double alpha, double beta, Py_ssize_t n, Py_ssize_t x, P_in):
    cdef double[:, ::1] P = np.ascontiguousarray(P_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef double[::1] nxt = np.zeros(n + 1)
    cdef double[::1] cur = np.zeros(n + 1)
    cdef double[::1] tmp
    cdef double ab = alpha + beta
    cdef double q, up, down, bv, acc, hi, lo
    cdef Py_ssize_t i, j
    with nogil:
        acc = 0.0
        for j in range(n):
            _final_row(alpha, ab, n, x, j, &q, &up, &down)
            bv = q * up + (1.0 - q) * down
            nxt[j] = bv
            acc += P[n - 1, j] * (q * fabs(up - bv) + (1.0 - q) * fabs(bv - down))
        out[n - 1] = acc
        for i in range(n - 2, -1, -1):
            acc = 0.0
            for j in range(i + 1):
                q = _q(alpha, ab, i, j)
                hi = nxt[j + 1]
                lo = nxt[j]
                bv = q * hi + (1.0 - q) * lo
                cur[j] = bv
                acc += P[i, j] * (q * fabs(hi - bv) + (1.0 - q) * fabs(bv - lo))
            out[i] = acc
            tmp = nxt
            nxt = cur
            cur = tmp
    return out_arr
