"""Pure-Python (numpy) implementations of the GF(q) matrix kernels.

Matrices are 2-D ``int64`` arrays of element codes (an element
``c0 + c1*x + ...`` of GF(p^k) is encoded as the integer ``c0 + c1*p + ...``).
All arithmetic is table driven: ``exp``/``log`` tables give multiplication
through the discrete log of a fixed generator, ``add`` is the full addition
table and ``neg``/``inv`` are unary lookup tables.  The compiled backend in
``_core.pyx`` implements the same contract element by element; both must
produce bit-identical results.

Conventions used by every kernel:

* ``log[0]`` is 0 but meaningless; zero operands are masked explicitly.
* ``exp`` has length ``2*(q-1)`` so a sum of two logs never needs reduction.
* functions never mutate their inputs unless the name says ``in_place``.
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def _mul_vec(a, b, exp, log):
    """Elementwise product of two code arrays (broadcasting allowed)."""
    nz = (a != 0) & (b != 0)
    out = exp[log[a] + log[b]]
    return np.where(nz, out, 0)


def scale(row, c, exp, log):
    """Multiply a code array by the scalar code ``c``."""
    if c == 0:
        return np.zeros_like(row)
    out = exp[log[row] + log[c]]
    out[row == 0] = 0
    return out


def rref_in_place(m, exp, log, add, neg, inv):
    """Reduce ``m`` to reduced row-echelon form in place.

    Returns ``(rank, pivots)`` with ``pivots`` the list of pivot columns.
    """
    rows, cols = m.shape
    rank = 0
    pivots = []
    for c in range(cols):
        if rank == rows:
            break
        nzr = np.nonzero(m[rank:, c])[0]
        if nzr.size == 0:
            continue
        pr = rank + int(nzr[0])
        if pr != rank:
            m[[rank, pr]] = m[[pr, rank]]
        pc = m[rank, c]
        if pc != 1:
            m[rank] = scale(m[rank], int(inv[pc]), exp, log)
        others = np.nonzero(m[:, c])[0]
        others = others[others != rank]
        if others.size:
            factors = m[others, c]
            prod = _mul_vec(factors[:, None], m[rank][None, :], exp, log)
            m[others] = add[m[others], neg[prod]]
        pivots.append(c)
        rank += 1
    return rank, pivots


def matmul(a, b, exp, log, add):
    """GF matrix product of code arrays ``a`` (m,k) and ``b`` (k,n)."""
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError(f"matmul shape mismatch: {a.shape} x {b.shape}")
    if add.shape[0] > 1 and add[1, 1] == 0 and m * k * n <= 2**24:
        # characteristic 2: addition is xor, so the sum reduces in one pass
        prod = _mul_vec(a[:, :, None], b[None, :, :], exp, log)
        return np.bitwise_xor.reduce(prod, axis=1)
    out = np.zeros((m, n), dtype=np.int64)
    for t in range(k):
        col = a[:, t]
        if not col.any():
            continue
        row = b[t]
        prod = _mul_vec(col[:, None], row[None, :], exp, log)
        out = add[out, prod]
    return out
