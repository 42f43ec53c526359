"""Exact arithmetic in small finite fields and exact linear algebra over them.

Elements of GF(p^k) are polynomials over GF(p) modulo a fixed monic
irreducible of degree k, encoded as integers: the element
``c0 + c1*x + ... + c_{k-1}*x^{k-1}`` has code ``c0 + c1*p + ... ``.
Scalar arithmetic is plain modular polynomial arithmetic; a field also
carries exp/log/add/neg/inv numpy tables so that matrix work can run
through the table-driven kernels in :mod:`agdec.backend`.  Table products
agree bit for bit with the direct products (tested), so the tables are an
optimization, not a semantic choice.

The modulus is deterministic: the first monic irreducible of degree k in
ascending code order (high-degree coefficients most significant), so two
runs always build the same field.

Matrices are thin wrappers over 2-D int64 code arrays; subspaces are stored
through their reduced row-echelon basis, which makes subspace equality,
dimension bookkeeping and membership tests exact and canonical.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import functools

import numpy as np

from . import backend

# Largest field order for which the addition table (q x q int64) is built.
# Scalar FieldElem arithmetic works regardless; matrix kernels need tables.
TABLE_LIMIT = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """GF(p^k) with a deterministic modulus and table-driven kernels."""

    def __init__(self, p: int, k: int, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use field_create(p, k)")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = self._find_modulus(p, k)
        self._build_tables()

    # -- construction -------------------------------------------------

    @staticmethod
    def _find_modulus(p: int, k: int) -> tuple[int, ...]:
        """First monic irreducible of degree k, coefficients low-to-high."""
        if k == 1:
            return (0, 1)
        for code in range(p**k):
            coeffs = _digits(code, p, k) + [1]
            if _poly_irreducible(coeffs, p):
                return tuple(coeffs)
        raise RuntimeError(f"no irreducible of degree {k} over GF({p})")

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        if q > TABLE_LIMIT:
            self._exp = self._log = self._add = self._neg = self._inv = None
            return
        gen = self._find_generator()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            exp[i + q - 1] = v
            log[v] = i
            v = self.mul_direct(v, gen)
        if v != 1:
            raise RuntimeError("generator order mismatch")
        if p == 2:
            grid = np.arange(q, dtype=np.int64)
            add = grid[:, None] ^ grid[None, :]
        else:
            digits = np.zeros((q, self.k), dtype=np.int64)
            r = np.arange(q)
            for i in range(self.k):
                digits[:, i] = r % p
                r = r // p
            s = (digits[:, None, :] + digits[None, :, :]) % p
            add = np.zeros((q, q), dtype=np.int64)
            for i in range(self.k):
                add += s[:, :, i] * p**i
        neg = np.array([self.neg_direct(c) for c in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1) - log[np.arange(1, q)]]
        self._exp, self._log, self._add, self._neg, self._inv = exp, log, add, neg, inv

    def _find_generator(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self.pow_direct(g, n // f) != 1 for f in factors):
                return g
        if self.q == 2:
            return 1
        raise RuntimeError("no multiplicative generator found")

    # -- direct (table-free) code arithmetic --------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return _undigits([(x + y) % self.p for x, y in
                          zip(_digits(a, self.p, self.k), _digits(b, self.p, self.k))], self.p)

    def neg_direct(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return _undigits([(-x) % self.p for x in _digits(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_direct(b))

    def mul_direct(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        da = _digits(a, p, k)
        db = _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(k):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return _undigits(prod[:k], self.p)

    def mul(self, a: int, b: int) -> int:
        if self._exp is None or a == 0 or b == 0:
            return self.mul_direct(a, b) if (a and b) else 0
        return int(self._exp[self._log[a] + self._log[b]])

    def pow_direct(self, a: int, e: int) -> int:
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul_direct(r, base)
            base = self.mul_direct(base, base)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._inv is not None:
            return int(self._inv[a])
        return self.pow_direct(a, self.q - 2)

    # -- element API ---------------------------------------------------

    def elem(self, value) -> FieldElem:
        """Build an element from a code, a coefficient list, or an element."""
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, int(value) % self.p if self.k == 1 else int(value))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for GF({self.p}^{self.k})")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElem(self, _undigits(coeffs, self.p))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self):
        """All element codes, ascending."""
        return range(self.q)

    # -- numpy helpers (vectorized, table-backed) ----------------------

    def require_tables(self) -> None:
        if self._exp is None:
            raise ValueError(
                f"field of order {self.q} exceeds the table limit {TABLE_LIMIT}; "
                "matrix operations are not supported at this size"
            )

    def mul_vec(self, a, b):
        self.require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        return np.where(nz, self._exp[self._log[a] + self._log[b]], 0)

    def add_vec(self, a, b):
        self.require_tables()
        return self._add[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def sub_vec(self, a, b):
        self.require_tables()
        return self._add[np.asarray(a, dtype=np.int64), self._neg[np.asarray(b, dtype=np.int64)]]

    def neg_vec(self, a):
        self.require_tables()
        return self._neg[np.asarray(a, dtype=np.int64)]

    def pow_vec(self, a, e: int):
        out = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                out = self.mul_vec(out, base)
            base = self.mul_vec(base, base)
            e >>= 1
        return out

    def rref_raw(self, arr):
        """RREF of a raw code array; returns (matrix, rank, pivots)."""
        self.require_tables()
        m = np.ascontiguousarray(arr, dtype=np.int64).copy()
        if m.size == 0:
            return m, 0, []
        rank, pivots = backend.rref_in_place(m, self._exp, self._log,
                                             self._add, self._neg, self._inv)
        return m, rank, list(pivots)

    def matmul_raw(self, a, b):
        self.require_tables()
        a = np.ascontiguousarray(a, dtype=np.int64)
        b = np.ascontiguousarray(b, dtype=np.int64)
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return backend.matmul(a, b, self._exp, self._log, self._add)

    def matvec_raw(self, a, v):
        return self.matmul_raw(a, np.asarray(v, dtype=np.int64).reshape(-1, 1))[:, 0]

    # -- misc -----------------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_create, (self.p, self.k))


_FIELD_TOKEN = object()


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> Field:
    """Create (or fetch the cached) GF(p^k) with the deterministic modulus."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    return Field(p, k, _token=_FIELD_TOKEN)


def _digits(code: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def _undigits(digits, p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial-division irreducibility for a monic polynomial over GF(p)."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    if coeffs[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = _digits(code, p, d) + [1]
            if _poly_rem(coeffs, div, p) is None:
                return False
    return True


def _poly_rem(a: list[int], b: list[int], p: int):
    """None when monic ``b`` divides ``a`` exactly, else the remainder."""
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db:
        c = r[-1]
        if c:
            for i in range(db + 1):
                r[len(r) - 1 - db + i] = (r[len(r) - 1 - db + i] - c * b[i]) % p
        r.pop()
        while r and r[-1] == 0 and len(r) - 1 >= db:
            r.pop()
    if any(r):
        return r
    return None


class FieldElem:
    """An element of a :class:`Field`, hashable and immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return _digits(self.code, self.field.p, self.field.k)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise ValueError("mixed-field operands")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.elem(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.code, o.code))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.sub(self.code, o.code))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.code, o.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(o.code)))

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __neg__(self):
        return FieldElem(self.field, self.field.neg_direct(self.code))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElem(self.field, self.field.pow_direct(self.code, e))

    def inv(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self == self.field.elem(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.code}:{self.field!r}"


class Matrix:
    """A rectangular matrix over one field, stored as an int64 code array."""

    __slots__ = ("field", "codes")

    def __init__(self, field: Field, codes):
        arr = np.ascontiguousarray(codes, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-D")
        self.field = field
        self.codes = arr

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        data = [[field.elem(v).code for v in row] for row in rows]
        width = {len(r) for r in data}
        if len(width) > 1:
            raise ValueError("ragged rows")
        if not data:
            return cls(field, np.zeros((0, 0), dtype=np.int64))
        return cls(field, np.array(data, dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.codes.shape[0]

    @property
    def cols(self) -> int:
        return self.codes.shape[1]

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.field, int(self.codes[i, j]))

    def entries(self):
        for i in range(self.rows):
            for j in range(self.cols):
                yield self.entry(i, j)

    def rref(self) -> tuple["Matrix", int, list[int]]:
        m, rank, pivots = self.field.rref_raw(self.codes)
        return Matrix(self.field, m), rank, pivots

    def rank(self) -> int:
        return self.rref()[1]

    def kernel(self) -> "Subspace":
        return Subspace(self.field, kernel_raw(self.field, self.codes), self.cols)

    def solve(self, b):
        """One solution of ``M x = b`` (free variables zero), or None."""
        vec = _as_code_vector(self.field, b)
        if vec.shape[0] != self.rows:
            raise ValueError("rhs length mismatch")
        x = solve_raw(self.field, self.codes, vec)
        return None if x is None else Vector(self.field, x)

    def matmul(self, other: "Matrix") -> "Matrix":
        if other.field is not self.field:
            raise ValueError("mixed-field operands")
        return Matrix(self.field, self.field.matmul_raw(self.codes, other.codes))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, np.ascontiguousarray(self.codes.T))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field is self.field
                and np.array_equal(self.codes, other.codes))

    def __hash__(self):
        return hash((id(self.field), self.codes.tobytes(), self.codes.shape))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


class Vector:
    """A fixed-length vector of field elements (code-array backed)."""

    __slots__ = ("field", "codes")

    def __init__(self, field: Field, codes):
        self.field = field
        self.codes = np.ascontiguousarray(codes, dtype=np.int64)

    def __len__(self):
        return self.codes.shape[0]

    def __getitem__(self, i) -> FieldElem:
        return FieldElem(self.field, int(self.codes[i]))

    def __eq__(self, other):
        if isinstance(other, Vector):
            return self.field is other.field and np.array_equal(self.codes, other.codes)
        return NotImplemented

    def __repr__(self):
        return f"Vector({list(map(int, self.codes))})"


def _as_code_vector(field: Field, v) -> np.ndarray:
    if isinstance(v, Vector):
        return v.codes
    if isinstance(v, np.ndarray):
        return np.ascontiguousarray(v, dtype=np.int64)
    return np.array([field.elem(x).code for x in v], dtype=np.int64)


# ---------------------------------------------------------------------------
# raw-array linear algebra used by the rest of the package
# ---------------------------------------------------------------------------

def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    return m.rref()


def kernel_raw(field: Field, arr) -> np.ndarray:
    """RREF basis (rows) of ``{v : arr @ v = 0}``."""
    arr = np.asarray(arr, dtype=np.int64)
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=np.int64)
    r, rank, pivots = field.rref_raw(arr)
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[idx, fc] = 1
        col = r[:rank, fc]
        basis[idx, pivots] = field.neg_vec(col)
    basis, _, _ = field.rref_raw(basis)
    return basis[~np.all(basis == 0, axis=1)]


def kernel(m: Matrix) -> "Subspace":
    return m.kernel()


def solve_transform(field: Field, arr):
    """RREF data for repeated solving: returns (T, rank, pivots).

    ``T`` is invertible with ``T @ arr`` in RREF; rows of ``T`` past ``rank``
    span the left kernel of ``arr``.
    """
    arr = np.asarray(arr, dtype=np.int64)
    rows, cols = arr.shape
    aug = np.hstack([arr, np.eye(rows, dtype=np.int64)])
    r, _, piv = field.rref_raw(aug)
    pivots = [c for c in piv if c < cols]
    rank = len(pivots)
    return r[:, cols:], rank, pivots


def solve_raw(field: Field, arr, b) -> np.ndarray | None:
    """One solution of ``arr @ x = b`` with free variables zero, or None."""
    arr = np.asarray(arr, dtype=np.int64)
    rows, cols = arr.shape
    b = np.asarray(b, dtype=np.int64)
    aug = np.hstack([arr, b.reshape(-1, 1)])
    r, rank, pivots = field.rref_raw(aug)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x


def solve(m: Matrix, b):
    return m.solve(b)


def solve_many_raw(field: Field, arr, rhs) -> tuple[np.ndarray, np.ndarray]:
    """Particular solutions for many right-hand sides (columns of ``rhs``).

    Returns ``(X, ok)`` where column j of ``X`` solves ``arr @ x = rhs[:, j]``
    with free variables zero whenever ``ok[j]`` is True.  The map
    ``rhs -> x`` is linear on consistent inputs (fixed elimination).
    """
    arr = np.asarray(arr, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    t, rank, pivots = solve_transform(field, arr)
    c = field.matmul_raw(t, rhs)
    ok = ~np.any(c[rank:, :] != 0, axis=0) if c.shape[0] > rank else \
        np.ones(rhs.shape[1], dtype=bool)
    x = np.zeros((arr.shape[1], rhs.shape[1]), dtype=np.int64)
    x[pivots, :] = c[:rank, :]
    return x, ok


class Subspace:
    """A subspace of F_q^m held by its canonical RREF basis (rows)."""

    __slots__ = ("field", "basis", "ambient_dim")

    def __init__(self, field: Field, basis, ambient_dim: int | None = None,
                 *, reduce: bool = True):
        arr = np.ascontiguousarray(basis, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("basis must be a 2-D array")
        if ambient_dim is None:
            ambient_dim = arr.shape[1]
        if arr.shape[1] != ambient_dim:
            raise ValueError("basis width disagrees with ambient dimension")
        if reduce and arr.shape[0]:
            arr, rank, _ = field.rref_raw(arr)
            arr = arr[:rank]
        self.field = field
        self.basis = arr
        self.ambient_dim = ambient_dim

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, np.zeros((0, ambient_dim), dtype=np.int64), ambient_dim,
                   reduce=False)

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, np.eye(ambient_dim, dtype=np.int64), ambient_dim,
                   reduce=False)

    @classmethod
    def span(cls, field: Field, vectors) -> "Subspace":
        rows = [_as_code_vector(field, v) for v in vectors]
        return cls(field, np.array(rows, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace") -> None:
        if other.field is not self.field or other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient mismatch")

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, np.vstack([self.basis, other.basis]),
                        self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """All w with <v, w> = 0 for every v here."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace(self.field, kernel_raw(self.field, self.basis),
                        self.ambient_dim, reduce=False)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        stacked = np.vstack([self.annihilator().basis, other.annihilator().basis])
        if stacked.shape[0] == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return Subspace(self.field, kernel_raw(self.field, stacked),
                        self.ambient_dim, reduce=False)

    def contains(self, v) -> bool:
        vec = _as_code_vector(self.field, v).copy()
        f = self.field
        for i in range(self.dim):
            row = self.basis[i]
            pc = int(np.nonzero(row)[0][0])
            if vec[pc]:
                vec = f.sub_vec(vec, f.mul_vec(np.int64(vec[pc]), row))
        return not vec.any()

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(other.basis[i]) for i in range(other.dim))

    def coordinates(self, v) -> np.ndarray | None:
        """Coordinates of ``v`` in the RREF basis, or None if outside."""
        vec = _as_code_vector(self.field, v)
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64) if not vec.any() else None
        pivots = [int(np.nonzero(row)[0][0]) for row in self.basis]
        coords = vec[pivots]
        recon = self.field.matmul_raw(coords.reshape(1, -1), self.basis)[0]
        if np.array_equal(recon, vec):
            return coords
        return None

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.field is self.field
                and other.ambient_dim == self.ambient_dim
                and np.array_equal(other.basis, self.basis))

    def __hash__(self):
        return hash((id(self.field), self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient_dim})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum_with(v)


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def decompose(v, u1: Subspace, u2: Subspace, z: Subspace):
    """Split ``v = v1 + v2 + vz`` along the direct sum ``u1 + u2 + z``.

    Raises ValueError when the three subspaces are not in direct sum or when
    ``v`` lies outside their span.  The components are unique and do not
    depend on how the subspace bases are presented.
    """
    u1._check(u2)
    u1._check(z)
    field = u1.field
    total = u1.dim + u2.dim + z.dim
    stacked = np.vstack([u1.basis, u2.basis, z.basis])
    if stacked.shape[0]:
        _, rank, _ = field.rref_raw(stacked)
    else:
        rank = 0
    if rank != total:
        raise ValueError("subspaces not in direct sum")
    vec = _as_code_vector(field, v)
    coeffs = solve_raw(field, np.ascontiguousarray(stacked.T), vec)
    if coeffs is None:
        raise ValueError("vector outside the span of the decomposition")
    d1, d2 = u1.dim, u2.dim
    def part(basis, cs):
        if basis.shape[0] == 0:
            return np.zeros(vec.shape[0], dtype=np.int64)
        return field.matmul_raw(cs.reshape(1, -1), basis)[0]
    return (part(u1.basis, coeffs[:d1]),
            part(u2.basis, coeffs[d1:d1 + d2]),
            part(z.basis, coeffs[d1 + d2:]))
