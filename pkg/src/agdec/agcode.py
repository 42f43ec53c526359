"""Evaluation codes on a curve, duals, star products and Hamming utilities.

A code is the image of the one-point space L(degG * Qinf) under evaluation
at an ordered list of affine rational points.  Words travel as 1-D int64
code arrays; the field is carried by the code (or passed explicitly to the
free functions).  The dual is computed as the kernel of the generator
matrix, never through differentials.
"""

from __future__ import annotations

import numpy as np

from .algebra import Field, Subspace, kernel_raw
from .curve import AffinePoint, CabCurve, CurveFn, evaluation_rows, fn_to_vec


class AGCode:
    """C_L(curve, points, degG * Qinf) with its generator and dual."""

    def __init__(self, curve: CabCurve, points, degG: int):
        points = list(points)
        n = len(points)
        if n == 0:
            raise ValueError("no evaluation points")
        if degG >= n:
            raise ValueError(f"degG = {degG} must be smaller than n = {n}")
        if degG < 0:
            raise ValueError("degG must be nonnegative")
        seen = set()
        for p in points:
            if not isinstance(p, AffinePoint) or p.curve is not curve:
                raise ValueError("evaluation point not on this curve")
            if (p.x, p.y) in seen:
                raise ValueError("duplicate evaluation point")
            seen.add((p.x, p.y))
        self.curve = curve
        self.field: Field = curve.field
        self.points: tuple[AffinePoint, ...] = tuple(points)
        self.degG = degG
        self.gen_functions = curve.monomials(degG)
        count = len(self.gen_functions)
        self.gen_matrix = np.ascontiguousarray(
            evaluation_rows(curve, points, count).T)  # k x n
        _, rank, _ = self.field.rref_raw(self.gen_matrix)
        if rank != count:
            raise ValueError("generator matrix is rank deficient")
        self._dual: Subspace | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.gen_matrix.shape[0]

    @property
    def designed_distance(self) -> int:
        return self.n - self.degG

    def encode(self, message) -> np.ndarray:
        """Codeword for a length-dim coefficient vector."""
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.dim,):
            raise ValueError("message length mismatch")
        return self.field.matmul_raw(msg.reshape(1, -1), self.gen_matrix)[0]

    def row_space(self) -> Subspace:
        return Subspace(self.field, self.gen_matrix, self.n)

    def dual_space(self) -> Subspace:
        if self._dual is None:
            self._dual = Subspace(self.field, kernel_raw(self.field, self.gen_matrix),
                                  self.n, reduce=False)
        return self._dual

    def contains(self, word) -> bool:
        """Dual check: word is a codeword iff it kills every parity row."""
        w = np.asarray(word, dtype=np.int64)
        h = self.dual_space().basis
        if h.shape[0] == 0:
            return True
        return not self.field.matmul_raw(h, w.reshape(-1, 1)).any()

    def __repr__(self):
        return f"AGCode[n={self.n}, k={self.dim}, d*={self.designed_distance}]"


def code_create(curve: CabCurve, points, degG: int) -> AGCode:
    return AGCode(curve, points, degG)


def ev(f: CurveFn, points) -> np.ndarray:
    """Componentwise evaluation of a function at the given points."""
    points = list(points)
    if not points:
        return np.zeros(0, dtype=np.int64)
    curve = points[0].curve
    bound = f.pole_order()
    if bound is None:
        return np.zeros(len(points), dtype=np.int64)
    vec = fn_to_vec(f, bound)
    rows = evaluation_rows(curve, points, vec.shape[0])
    return curve.field.matmul_raw(rows, vec.reshape(-1, 1))[:, 0]


def dual(code: AGCode) -> Subspace:
    return code.dual_space()


def star_product(u: Subspace, v: Subspace) -> Subspace:
    """Span of all componentwise products of vectors of u and v."""
    if u.field is not v.field or u.ambient_dim != v.ambient_dim:
        raise ValueError("length mismatch")
    f = u.field
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(f, u.ambient_dim)
    prods = f.mul_vec(u.basis[:, None, :], v.basis[None, :, :])
    prods = prods.reshape(u.dim * v.dim, u.ambient_dim)
    return Subspace(f, prods, u.ambient_dim)


def star_power(u: Subspace, e: int) -> Subspace:
    out = u
    for _ in range(e - 1):
        out = star_product(out, u)
    return out


def hamming(a, b) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("length mismatch")
    return int(np.count_nonzero(a != b))


def weight(a) -> int:
    return int(np.count_nonzero(np.asarray(a)))


def support(a) -> list[int]:
    return np.nonzero(np.asarray(a))[0].tolist()


def parse_vector(field: Field, text: str) -> np.ndarray:
    """Whitespace-separated elements, each a comma-separated coefficient tuple."""
    out = []
    for tok in text.split():
        coeffs = [int(c) for c in tok.split(",")]
        out.append(field.elem(coeffs).code)
    return np.array(out, dtype=np.int64)


def format_vector(field: Field, word) -> str:
    from .algebra import _digits
    toks = []
    for code in np.asarray(word, dtype=np.int64).tolist():
        toks.append(",".join(str(c) for c in _digits(code, field.p, field.k)))
    return " ".join(toks)
