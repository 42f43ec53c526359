"""Plane curves with one place at infinity and their coordinate rings.

A curve here is given by an equation ``y^a = sum c_{ij} x^i y^j`` over a
finite field, where ``gcd(a, b) = 1``, the right-hand side contains ``x^b``
(weight ``a*b``) and every other monomial has ``a*i + b*j < a*b`` with
``j < a``.  Then x and y have pole orders a and b at the single point at
infinity, the genus is ``(a-1)(b-1)/2``, and the functions with poles only
at infinity have the monomial basis ``{x^i y^j : j < a}``.  The pole order
``a*i + b*j`` is injective on that set, which gives every function a unique
leading monomial and makes dimension counts exact.

The rational function field (a projective line) is the degenerate member
``a = b = 1`` with equation ``y = x``; everything below treats it uniformly.

Functions are sparse dictionaries ``(i, j) -> code`` in normal form
(``j < a``).  Local power-series expansions at affine points use the
uniformizer ``x - x0`` when dE/dy does not vanish at the point and
``y - y0`` otherwise; the dependent coordinate is developed by Newton
iteration.  Curves memoize point enumeration, monomial lists, reduction of
y-powers and expansion rows; the memo tables are append-only, so sharing a
curve between decodes is safe.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import Field, FieldElem


class CurveError(ValueError):
    pass


class CabCurve:
    """A one-point plane curve ``y^a = sum c_{ij} x^i y^j``."""

    def __init__(self, field: Field, a: int, b: int, coeffs):
        if a < 1 or b < 1 or math.gcd(a, b) != 1:
            raise CurveError(f"pole orders a={a}, b={b} must be coprime positive")
        self.field = field
        self.a = a
        self.b = b
        rhs: dict[tuple[int, int], int] = {}
        for (i, j), c in coeffs.items():
            code = field.elem(c).code
            if code == 0:
                continue
            if (i, j) == (b, 0):
                rhs[(i, j)] = code
                continue
            if j >= a or a * i + b * j >= a * b:
                raise CurveError(f"monomial x^{i} y^{j} outside the admissible range")
            rhs[(i, j)] = code
        if rhs.get((b, 0), 0) == 0:
            raise CurveError(f"defining equation must contain x^{b}")
        self.coeffs = rhs
        self.genus = (a - 1) * (b - 1) // 2
        self._monomials: list[tuple[int, int]] = []
        self._pole_orders: list[int] = []
        self._mono_limit = -1
        self._y_reduce: dict[int, dict[tuple[int, int], int]] = {}
        self._points: list[AffinePoint] | None = None
        self._point_index: dict[tuple[int, int], int] = {}
        self._series: dict[tuple[int, int], dict] = {}
        self._blocks: dict[int, tuple[np.ndarray, int]] = {}

    # -- basic structure ------------------------------------------------

    def pole_order(self, mono: tuple[int, int]) -> int:
        return self.a * mono[0] + self.b * mono[1]

    def monomials(self, bound: int) -> list[tuple[int, int]]:
        """Monomial basis of the functions with pole order <= bound at infinity."""
        self._ensure_monomials(bound)
        import bisect
        cut = bisect.bisect_right(self._pole_orders, bound)
        return self._monomials[:cut]

    def monomial_count(self, bound: int) -> int:
        return len(self.monomials(bound))

    def _ensure_monomials(self, bound: int) -> None:
        if bound <= self._mono_limit:
            return
        out = []
        for j in range(self.a):
            i = 0
            while self.a * i + self.b * j <= bound:
                out.append((i, j))
                i += 1
        out.sort(key=self.pole_order)
        self._monomials = out
        self._pole_orders = [self.pole_order(m) for m in out]
        self._mono_limit = bound

    def gaps(self) -> list[int]:
        """Pole orders not realized by any function (there are genus many)."""
        semigroup = {0}
        limit = 2 * self.genus + 1
        for j in range(self.a):
            for i in range(limit):
                v = self.a * i + self.b * j
                if v <= 2 * self.genus:
                    semigroup.add(v)
        return [v for v in range(2 * self.genus + 1) if v not in semigroup]

    # -- defining polynomial and derivatives -----------------------------

    def equation_at(self, x: int, y: int) -> int:
        """E(x, y) = y^a - sum c_ij x^i y^j as a code."""
        f = self.field
        val = f.pow_direct(y, self.a)
        for (i, j), c in self.coeffs.items():
            t = f.mul(c, f.mul(f.pow_direct(x, i), f.pow_direct(y, j)))
            val = f.sub(val, t)
        return val

    def partials_at(self, x: int, y: int) -> tuple[int, int]:
        f = self.field
        ex = 0
        ey = f.mul(self.a % f.p, f.pow_direct(y, self.a - 1)) if self.a % f.p else 0
        for (i, j), c in self.coeffs.items():
            if i:
                t = f.mul(f.mul(i % f.p, c), f.mul(f.pow_direct(x, i - 1), f.pow_direct(y, j)))
                ex = f.sub(ex, t)
            if j:
                t = f.mul(f.mul(j % f.p, c), f.mul(f.pow_direct(x, i), f.pow_direct(y, j - 1)))
                ey = f.sub(ey, t)
        return ex, ey

    # -- rational points --------------------------------------------------

    def affine_points(self) -> list["AffinePoint"]:
        """All affine rational points, lexicographic in (x, y) codes.

        Raises CurveError if any of them is singular.
        """
        if self._points is not None:
            return self._points
        f = self.field
        f.require_tables()
        q = f.q
        xs = np.arange(q, dtype=np.int64)
        ys = np.arange(q, dtype=np.int64)
        ypow = {j: f.pow_vec(ys, j) for j in {j for (_, j) in self.coeffs} | {self.a}}
        xpow = {i: f.pow_vec(xs, i) for i in {i for (i, _) in self.coeffs}}
        grid = np.tile(ypow[self.a][None, :], (q, 1))
        per_j: dict[int, np.ndarray] = {}
        for (i, j), c in self.coeffs.items():
            contrib = f.mul_vec(np.int64(c), xpow[i])
            per_j[j] = f.add_vec(per_j[j], contrib) if j in per_j else contrib
        for j, ax in per_j.items():
            grid = f.sub_vec(grid, f.mul_vec(ax[:, None], ypow[j][None, :]))
        xi, yi = np.nonzero(grid == 0)
        pts = []
        for x0, y0 in zip(xi.tolist(), yi.tolist()):
            ex, ey = self.partials_at(x0, y0)
            if ex == 0 and ey == 0:
                raise CurveError(f"singular rational point ({x0}, {y0})")
            pts.append(AffinePoint(self, x0, y0))
        pts.sort(key=lambda P: (P.x, P.y))
        self._points = pts
        self._point_index = {(P.x, P.y): k for k, P in enumerate(pts)}
        return pts

    def point(self, x, y) -> "AffinePoint":
        xc = self.field.elem(x).code
        yc = self.field.elem(y).code
        if self.equation_at(xc, yc) != 0:
            raise CurveError(f"({xc}, {yc}) is not on the curve")
        return AffinePoint(self, xc, yc)

    # -- y-power reduction -------------------------------------------------

    def reduce_y_power(self, jj: int) -> dict[tuple[int, int], int]:
        """Normal form of y^jj as a monomial dictionary."""
        if jj < self.a:
            return {(0, jj): 1}
        hit = self._y_reduce.get(jj)
        if hit is not None:
            return hit
        f = self.field
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.coeffs.items():
            # y^jj = y^(jj-a) * rhs
            for (i2, j2), c2 in self.reduce_y_power(j + jj - self.a).items():
                key = (i + i2, j2)
                v = f.add(out.get(key, 0), f.mul(c, c2))
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        self._y_reduce[jj] = out
        return out

    def __repr__(self):
        if self.a == 1:
            return f"Line over {self.field!r}"
        return f"Cab({self.a},{self.b}) over {self.field!r}"


def curve_create(field: Field, a: int, b: int, coeffs) -> CabCurve:
    """Validated curve; enumerates the rational points to reject singular ones."""
    crv = CabCurve(field, a, b, coeffs)
    crv.affine_points()
    return crv


def line(field: Field) -> CabCurve:
    """The rational function field: y = x, every function a polynomial in x."""
    return curve_create(field, 1, 1, {(1, 0): 1})


def hermitian_curve(field: Field) -> CabCurve:
    """y^q0 + y = x^(q0+1) over GF(q0^2)."""
    p, k = field.p, field.k
    if k % 2:
        raise CurveError("Hermitian curve needs a square field")
    q0 = p ** (k // 2)
    one = 1
    minus_one = field.neg_direct(one)
    return curve_create(field, q0, q0 + 1, {(q0 + 1, 0): one, (0, 1): minus_one})


class AffinePoint:
    """A nonsingular affine rational point (x, y); hashable, tied to its curve."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: CabCurve, x: int, y: int):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def x0(self) -> FieldElem:
        return FieldElem(self.curve.field, self.x)

    @property
    def y0(self) -> FieldElem:
        return FieldElem(self.curve.field, self.y)

    @property
    def index(self) -> int:
        self.curve.affine_points()
        return self.curve._point_index[(self.x, self.y)]

    def __eq__(self, other):
        return (isinstance(other, AffinePoint) and other.curve is self.curve
                and other.x == self.x and other.y == self.y)

    def __hash__(self):
        return hash((id(self.curve), self.x, self.y))

    def __repr__(self):
        return f"P({self.x},{self.y})"


class CurveFn:
    """A function in the coordinate ring, sparse normal form (j < a)."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: CabCurve, coeffs: dict[tuple[int, int], int]):
        self.curve = curve
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    @classmethod
    def zero(cls, curve: CabCurve) -> "CurveFn":
        return cls(curve, {})

    @classmethod
    def constant(cls, curve: CabCurve, value) -> "CurveFn":
        return cls(curve, {(0, 0): curve.field.elem(value).code})

    @classmethod
    def monomial(cls, curve: CabCurve, i: int, j: int, c=1) -> "CurveFn":
        if j >= curve.a:
            raise CurveError("monomial not in normal form")
        return cls(curve, {(i, j): curve.field.elem(c).code})

    def is_zero(self) -> bool:
        return not self.coeffs

    def pole_order(self) -> int | None:
        """Pole order at infinity; None for the zero function."""
        if not self.coeffs:
            return None
        return max(self.curve.pole_order(m) for m in self.coeffs)

    def __add__(self, other: "CurveFn") -> "CurveFn":
        self._check(other)
        f = self.curve.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = f.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return CurveFn(self.curve, out)

    def __neg__(self) -> "CurveFn":
        f = self.curve.field
        return CurveFn(self.curve, {m: f.neg_direct(c) for m, c in self.coeffs.items()})

    def __sub__(self, other: "CurveFn") -> "CurveFn":
        return self + (-other)

    def scale(self, c) -> "CurveFn":
        f = self.curve.field
        code = f.elem(c).code
        if code == 0:
            return CurveFn.zero(self.curve)
        return CurveFn(self.curve, {m: f.mul(v, code) for m, v in self.coeffs.items()})

    def _check(self, other: "CurveFn") -> None:
        if other.curve is not self.curve:
            raise CurveError("functions on different curves")

    def __mul__(self, other: "CurveFn") -> "CurveFn":
        return fn_mul(self, other)

    def __pow__(self, e: int) -> "CurveFn":
        out = CurveFn.constant(self.curve, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, CurveFn) and other.curve is self.curve
                and other.coeffs == self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Fn(0)"
        terms = sorted(self.coeffs, key=self.curve.pole_order)
        return "Fn(" + " + ".join(f"{self.coeffs[m]}*x^{m[0]}y^{m[1]}" for m in terms) + ")"


def fn_mul(f: CurveFn, g: CurveFn) -> CurveFn:
    """Normal-form product; pole orders add for nonzero operands."""
    f._check(g)
    crv = f.curve
    fld = crv.field
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in f.coeffs.items():
        for (i2, j2), c2 in g.coeffs.items():
            c = fld.mul(c1, c2)
            jj = j1 + j2
            if jj < crv.a:
                key = (i1 + i2, jj)
                v = fld.add(out.get(key, 0), c)
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
            else:
                for (ri, rj), rc in crv.reduce_y_power(jj).items():
                    key = (i1 + i2 + ri, rj)
                    v = fld.add(out.get(key, 0), fld.mul(c, rc))
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return CurveFn(crv, out)


def evaluate(f: CurveFn, point: AffinePoint) -> FieldElem:
    """Value of the function at an affine point."""
    if point.curve is not f.curve:
        raise CurveError("point on a different curve")
    fld = f.curve.field
    val = 0
    for (i, j), c in f.coeffs.items():
        val = fld.add(val, fld.mul(c, fld.mul(fld.pow_direct(point.x, i),
                                              fld.pow_direct(point.y, j))))
    return FieldElem(fld, val)


def fn_from_vec(curve: CabCurve, vec, bound: int) -> CurveFn:
    """Function from a coefficient vector over monomials(bound)."""
    monos = curve.monomials(bound)
    coeffs = {}
    for m, c in zip(monos, np.asarray(vec, dtype=np.int64).tolist()):
        if c:
            coeffs[m] = int(c)
    return CurveFn(curve, coeffs)


def fn_to_vec(f: CurveFn, bound: int) -> np.ndarray:
    """Coefficient vector of ``f`` over monomials(bound)."""
    monos = f.curve.monomials(bound)
    index = {m: k for k, m in enumerate(monos)}
    out = np.zeros(len(monos), dtype=np.int64)
    for m, c in f.coeffs.items():
        if m not in index:
            raise CurveError(f"monomial x^{m[0]}y^{m[1]} has pole order beyond {bound}")
        out[index[m]] = c
    return out


# ---------------------------------------------------------------------------
# truncated power series (lists of codes, index = exponent of the uniformizer)
# ---------------------------------------------------------------------------

def _ser_trim(s, prec):
    return (s + [0] * prec)[:prec]


def _ser_add(f, s, t):
    n = max(len(s), len(t))
    s = s + [0] * (n - len(s))
    t = t + [0] * (n - len(t))
    return [f.add(a, b) for a, b in zip(s, t)]


def _ser_scale(f, s, c):
    return [f.mul(a, c) for a in s]


def _ser_mul(f, s, t, prec):
    out = [0] * prec
    for i, a in enumerate(s[:prec]):
        if not a:
            continue
        for j, b in enumerate(t[:prec - i]):
            if b:
                out[i + j] = f.add(out[i + j], f.mul(a, b))
    return out


def _ser_inv(f, s, prec):
    c0 = s[0] if s else 0
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term")
    inv0 = f.inv(c0)
    out = [inv0] + [0] * (prec - 1)
    s = _ser_trim(s, prec)
    for n in range(1, prec):
        acc = 0
        for k in range(1, n + 1):
            acc = f.add(acc, f.mul(s[k], out[n - k]))
        out[n] = f.neg_direct(f.mul(inv0, acc))
    return out


def _ser_pow(f, s, e, prec):
    out = [1] + [0] * (prec - 1)
    base = _ser_trim(s, prec)
    while e:
        if e & 1:
            out = _ser_mul(f, out, base, prec)
        base = _ser_mul(f, base, base, prec)
        e >>= 1
    return out


def _point_series(curve: CabCurve, point: AffinePoint, prec: int) -> dict:
    """Series of x and y in the uniformizer at the point, to given precision."""
    key = (point.x, point.y)
    cached = curve._series.get(key)
    if cached is not None and cached["prec"] >= prec:
        return cached
    f = curve.field
    ex, ey = curve.partials_at(point.x, point.y)
    prec = max(prec, 2)
    if ey != 0:
        x_ser = _ser_trim([point.x, 1], prec)
        y_ser = _newton_y(curve, point, x_ser, prec)
        branch = "x"
    else:
        if ex == 0:
            raise CurveError("singular point")
        y_ser = _ser_trim([point.y, 1], prec)
        x_ser = _newton_x(curve, point, y_ser, prec)
        branch = "y"
    cached = {"prec": prec, "x": x_ser, "y": y_ser, "branch": branch, "mono": {}}
    curve._series[key] = cached
    return cached


def _newton_y(curve: CabCurve, point: AffinePoint, x_ser, prec: int):
    """Solve E(x(t), y) = 0 for y as a series, y(0) = y0, dE/dy(P) != 0."""
    f = curve.field
    xpow = {}
    def xp(i):
        if i not in xpow:
            xpow[i] = _ser_pow(f, x_ser, i, prec)
        return xpow[i]
    coeff = {curve.a: [1] + [0] * (prec - 1)}
    for (i, j), c in curve.coeffs.items():
        term = _ser_scale(f, xp(i), f.neg_direct(c))
        coeff[j] = _ser_add(f, coeff.get(j, [0] * prec), _ser_trim(term, prec))
    return _newton_solve(f, coeff, point.y, prec)


def _newton_x(curve: CabCurve, point: AffinePoint, y_ser, prec: int):
    """Solve E(x, y(t)) = 0 for x as a series, x(0) = x0, dE/dx(P) != 0."""
    f = curve.field
    ypow = {}
    def yp(j):
        if j not in ypow:
            ypow[j] = _ser_pow(f, y_ser, j, prec)
        return ypow[j]
    coeff: dict[int, list[int]] = {0: yp(curve.a)}
    for (i, j), c in curve.coeffs.items():
        term = _ser_scale(f, yp(j), f.neg_direct(c))
        coeff[i] = _ser_add(f, coeff.get(i, [0] * prec), _ser_trim(term, prec))
    return _newton_solve(f, coeff, point.x, prec)


def _newton_solve(f: Field, coeff: dict[int, list[int]], init: int, prec: int):
    """Newton iteration for sum_d coeff[d] * u^d = 0 with a simple root at init."""
    u = [init] + [0] * (prec - 1)
    degs = sorted(coeff)
    steps = max(1, prec.bit_length() + 1)
    for _ in range(steps):
        val = [0] * prec
        dval = [0] * prec
        for d in degs:
            cd = coeff[d]
            upow = _ser_pow(f, u, d, prec)
            val = _ser_add(f, val, _ser_mul(f, cd, upow, prec))
            dp = d % f.p
            if dp:
                um1 = _ser_pow(f, u, d - 1, prec)
                dval = _ser_add(f, dval, _ser_scale(f, _ser_mul(f, cd, um1, prec), dp))
        if not any(val):
            break
        corr = _ser_mul(f, val, _ser_inv(f, dval, prec), prec)
        u = [f.sub(a, b) for a, b in zip(u, corr)]
    if any(_newton_residual(f, coeff, u, prec)):
        raise CurveError("Newton iteration failed to converge")
    return u


def _newton_residual(f, coeff, u, prec):
    val = [0] * prec
    for d, cd in coeff.items():
        val = _ser_add(f, val, _ser_mul(f, cd, _ser_pow(f, u, d, prec), prec))
    return val


def _mono_series(curve: CabCurve, point: AffinePoint, mono, prec: int):
    cache = _point_series(curve, point, prec)
    if cache["prec"] < prec:
        cache = _point_series(curve, point, max(prec, 2 * cache["prec"]))
    store = cache["mono"]
    got = store.get(mono)
    if got is not None and len(got) >= prec:
        return got[:prec]
    f = curve.field
    work = cache["prec"]

    def build(m):
        s = store.get(m)
        if s is not None and len(s) >= work:
            return s
        i, j = m
        if i == 0 and j == 0:
            s = [1] + [0] * (work - 1)
        elif i > 0:
            s = _ser_mul(f, build((i - 1, j)), cache["x"], work)
        else:
            s = _ser_mul(f, build((i, j - 1)), cache["y"], work)
        store[m] = s
        return s

    return build(mono)[:prec]


def local_expansion(f: CurveFn, point: AffinePoint, prec: int) -> list[FieldElem]:
    """First ``prec`` coefficients of ``f`` in the local uniformizer at the point."""
    if point.curve is not f.curve:
        raise CurveError("point on a different curve")
    if prec < 1:
        return []
    fld = f.curve.field
    out = [0] * prec
    for m, c in f.coeffs.items():
        ser = _mono_series(f.curve, point, m, prec)
        for k in range(prec):
            out[k] = fld.add(out[k], fld.mul(c, ser[k]))
    return [FieldElem(fld, v) for v in out]


# ---------------------------------------------------------------------------
# vectorized expansion rows (order 0 and 1 for all points, higher on demand)
# ---------------------------------------------------------------------------

def _order_blocks(curve: CabCurve, order: int, count: int):
    """(n_points, count) array of order-``order`` expansion coefficients."""
    cached = curve._blocks.get(order)
    if cached is not None and cached[1] >= count:
        return cached[0][:, :count]
    if order > 1:
        raise ValueError("blocks exist only for orders 0 and 1")
    f = curve.field
    pts = curve.affine_points()
    n = len(pts)
    xs = np.array([P.x for P in pts], dtype=np.int64)
    ys = np.array([P.y for P in pts], dtype=np.int64)
    exv = np.array([curve.partials_at(P.x, P.y)[0] for P in pts], dtype=np.int64)
    eyv = np.array([curve.partials_at(P.x, P.y)[1] for P in pts], dtype=np.int64)
    xbranch = eyv != 0
    # implicit differentiation: on the x-branch dx=1, dy=-Ex/Ey; else dx=0, dy=1
    inv_ey = np.where(xbranch, f.pow_vec(np.where(xbranch, eyv, 1), f.q - 2), 0)
    dxs = np.where(xbranch, 1, 0).astype(np.int64)
    dys = np.where(xbranch, f.neg_vec(f.mul_vec(exv, inv_ey)), 1).astype(np.int64)

    grow = max(count, 2 * (cached[1] if cached else 0), 16)
    monos = _prefix_monomials(curve, grow)
    grow = len(monos)
    v0 = np.zeros((n, grow), dtype=np.int64)
    v1 = np.zeros((n, grow), dtype=np.int64)
    table: dict[tuple[int, int], int] = {}
    for k, (i, j) in enumerate(monos):
        if (i, j) == (0, 0):
            v0[:, k] = 1
            v1[:, k] = 0
        else:
            if i > 0:
                pk = table[(i - 1, j)]
                c0, d0 = xs, dxs
            else:
                pk = table[(i, j - 1)]
                c0, d0 = ys, dys
            v0[:, k] = f.mul_vec(v0[:, pk], c0)
            v1[:, k] = f.add_vec(f.mul_vec(v1[:, pk], c0), f.mul_vec(v0[:, pk], d0))
        table[(i, j)] = k
    for m, block in ((0, v0), (1, v1)):
        curve._blocks[m] = (block, grow)
    return curve._blocks[order][0][:, :count]


def _prefix_monomials(curve: CabCurve, count: int) -> list[tuple[int, int]]:
    """First ``count`` monomials in pole order (extends the cache as needed)."""
    bound = max(curve._mono_limit, 8)
    while True:
        monos = curve.monomials(bound)
        if len(monos) >= count:
            return monos[:count]
        bound *= 2


def expansion_row(curve: CabCurve, point: AffinePoint, order: int, count: int) -> np.ndarray:
    """Order-``order`` expansion coefficients of the first ``count`` monomials."""
    if order <= 1:
        return _order_blocks(curve, order, count)[point.index]
    monos = _prefix_monomials(curve, count)
    out = np.zeros(count, dtype=np.int64)
    for k, m in enumerate(monos):
        ser = _mono_series(curve, point, m, order + 1)
        out[k] = ser[order]
    return out


def evaluation_rows(curve: CabCurve, points, count: int) -> np.ndarray:
    """Evaluations of the first ``count`` monomials at the given points."""
    block = _order_blocks(curve, 0, count)
    idx = [P.index for P in points]
    return block[idx, :]
