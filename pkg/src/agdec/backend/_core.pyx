# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled GF(q) matrix kernels.

Same contract as ``pure.py``: C-contiguous int64 code matrices plus
exp/log/add/neg/inv tables, bit-identical results.  The triple loops here
are the hot path of the whole package (every Riemann-Roch space and every
locator-space step is one or more eliminations), which is why they are
compiled.
"""

import numpy as np

NAME = "cython"

ctypedef long long i64


cdef inline i64 _mul(i64 a, i64 b, i64[::1] exp, i64[::1] log) nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


def rref_in_place(i64[:, ::1] m,
                  i64[::1] exp,
                  i64[::1] log,
                  i64[:, ::1] add,
                  i64[::1] neg,
                  i64[::1] inv):
    """Reduce ``m`` to RREF in place; returns ``(rank, pivots)``."""
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t rank = 0, c, r, pr, j
    cdef i64 pc, f, tmp
    pivots = []
    for c in range(cols):
        if rank == rows:
            break
        pr = -1
        for r in range(rank, rows):
            if m[r, c] != 0:
                pr = r
                break
        if pr < 0:
            continue
        with nogil:
            if pr != rank:
                for j in range(cols):
                    tmp = m[rank, j]
                    m[rank, j] = m[pr, j]
                    m[pr, j] = tmp
            pc = m[rank, c]
            if pc != 1:
                pc = inv[pc]
                for j in range(cols):
                    m[rank, j] = _mul(m[rank, j], pc, exp, log)
            for r in range(rows):
                if r == rank:
                    continue
                f = m[r, c]
                if f == 0:
                    continue
                f = neg[f]
                for j in range(cols):
                    m[r, j] = add[m[r, j], _mul(f, m[rank, j], exp, log)]
        pivots.append(c)
        rank += 1
    return rank, pivots


def matmul(i64[:, ::1] a,
           i64[:, ::1] b,
           i64[::1] exp,
           i64[::1] log,
           i64[:, ::1] add):
    """GF matrix product of code matrices ``a`` (m,k) and ``b`` (k,n)."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t k = a.shape[1]
    cdef Py_ssize_t n = b.shape[1]
    if b.shape[0] != k:
        raise ValueError("matmul shape mismatch")
    out_arr = np.zeros((m, n), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef Py_ssize_t i, t, j
    cdef i64 av
    with nogil:
        for i in range(m):
            for t in range(k):
                av = a[i, t]
                if av == 0:
                    continue
                for j in range(n):
                    if b[t, j] != 0:
                        out[i, j] = add[out[i, j], exp[log[av] + log[b[t, j]]]]
    return out_arr
