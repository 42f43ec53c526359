"""Locator-space decoding with divisor adaptation and power constraints.

Given a received word y for a code C_L(curve, P, G), the decoder lifts y to
a function f_y in L(G') (G' one-point of degree n + 2g - 1, which makes the
evaluation map on L(G') surjective), and for a working divisor F computes
the locator spaces

    S_i(F) = { f in L(F) : f * f_y^i  in  L(F + iG) + L(F + iG' - D) },

for i = 1..ell, intersecting them into S(F).  S(F) always contains the true
error locators L(F - D_e).  While some evaluation point P drops dim S by at
least 2, F is replaced by F - P (repeat choices accumulate vanishing
multiplicity); once no such point exists, any nonzero element Lambda of
S(F) is used to split Lambda * f_y into its L(F+G) and L(F+G'-D) parts and
the error function is recovered as the exact quotient of the second part by
Lambda.  The result is validated (error weight, dual check) before being
declared a success, so a wrong branch ends in a reported failure rather
than a wrong codeword.

Everything is carried out over one coordinate system per power i: the
coefficient space of the monomial basis of L((degF + i degG') Qinf).
Membership in the possibly non-direct sum U1 + U2 is tested through the
vanishing-condition rows of U2, which works whether or not the sum is
direct, so the large-degree regime needs no special casing here.

The per-candidate rescan inside the adaptation step does not recompute
S(F - P) from scratch: S(F - P) consists exactly of those elements of S(F)
that satisfy one extra vanishing condition and whose product components
satisfy one extra condition each, so each candidate costs a handful of dot
products (the from-scratch recomputation of the committed step asserts
agreement, and oracle.s_space_reference cross-checks it independently).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import agcode as ag
from .algebra import Subspace, kernel_raw, solve_many_raw, solve_raw
from .curve import CabCurve, CurveFn, evaluation_rows, expansion_row, fn_from_vec, fn_to_vec
from .rrspace import Divisor, condition_rows, rr_space

S_ZERO = "S_zero"
NO_LAMBDA = "no_Lambda"
RECOVERY_INCONSISTENT = "recovery_inconsistent"
WEIGHT_EXCEEDED = "weight_exceeded"
NOT_CODEWORD = "not_codeword"

FIRST_HIT = "first-hit"
MAX_DROP = "max-drop"


class DecodeError(RuntimeError):
    """Internal contract violation (not a decoding failure)."""


class RecoveryError(RuntimeError):
    """Lambda could not be used to divide out the error function."""


@dataclass(frozen=True)
class DecoderConfig:
    """Knobs of a decode call; unset sizes take their standard defaults."""

    ell: int = 1
    t: int = 0
    degF: int | None = None
    degGprime: int | None = None
    max_steps: int | None = None
    point_policy: str = FIRST_HIT

    def resolve(self, n: int, g: int) -> "DecoderConfig":
        degF = self.degF if self.degF is not None else self.t + 2 * g
        degGp = self.degGprime if self.degGprime is not None else n + 2 * g - 1
        steps = self.max_steps if self.max_steps is not None else g + 1
        cfg = DecoderConfig(self.ell, self.t, degF, degGp, steps, self.point_policy)
        if cfg.ell < 1:
            raise ValueError("ell must be >= 1")
        if cfg.degF < cfg.t + g:
            raise ValueError("degF must be at least t + g")
        if cfg.degGprime < n + 2 * g - 1:
            raise ValueError("degGprime must be at least n + 2g - 1")
        if cfg.point_policy not in (FIRST_HIT, MAX_DROP):
            raise ValueError(f"unknown point policy {cfg.point_policy!r}")
        if not (0 <= cfg.t < n):
            raise ValueError("need 0 <= t < n")
        return cfg


@dataclass
class StepRecord:
    step: int
    divisor_degree: int
    dim_s: int
    dims_si: tuple[int, ...]
    chosen_point: int | None = None
    drop: int | None = None
    delta: int | None = None
    chosen_in_support: bool | None = None


@dataclass
class DecodeTrace:
    steps: list[StepRecord] = dc_field(default_factory=list)

    @property
    def delta0(self) -> int | None:
        return self.steps[0].delta if self.steps else None

    @property
    def delta_gaps(self) -> list[int]:
        out = []
        for before, after in zip(self.steps, self.steps[1:]):
            if before.chosen_point is not None and before.delta is not None \
                    and after.delta is not None:
                out.append(before.delta - after.delta)
        return out

    @property
    def dim_drops(self) -> list[int]:
        return [r.drop for r in self.steps if r.drop is not None]

    @property
    def chosen_points(self) -> list[int]:
        return [r.chosen_point for r in self.steps if r.chosen_point is not None]

    @property
    def points_in_support(self) -> bool | None:
        flags = [r.chosen_in_support for r in self.steps if r.chosen_in_support is not None]
        if not flags:
            return None
        return all(flags)

    @property
    def adaptations(self) -> int:
        return len(self.chosen_points)


@dataclass
class Outcome:
    status: str
    reason: str | None = None
    f_e: CurveFn | None = None
    error: np.ndarray | None = None
    codeword: np.ndarray | None = None

    @property
    def ok(self) -> bool:
        return self.status == "success"


class DecodeContext:
    """Per-received-word state: the lift f_y, its powers, product matrices.

    ``lift`` replaces the deterministic zero-free-variables lift with any
    other function of L(degGprime * Qinf) evaluating to y; the locator
    spaces and the recovered error vector do not depend on the choice.
    """

    def __init__(self, code: ag.AGCode, y, config: DecoderConfig,
                 lift: CurveFn | None = None):
        self.code = code
        self.curve: CabCurve = code.curve
        self.field = code.field
        cfg = config.resolve(code.n, self.curve.genus)
        self.config = cfg
        self.y = np.asarray(y, dtype=np.int64)
        if self.y.shape != (code.n,):
            raise ValueError("received word length mismatch")
        self.degF = cfg.degF
        self.degGp = cfg.degGprime
        self.ell = cfg.ell
        self.n_f = self.curve.monomial_count(self.degF)
        self.n_amb = [self.curve.monomial_count(self.degF + i * self.degGp)
                      for i in range(self.ell + 1)]  # index by i, slot 0 unused
        if lift is None:
            self.f_y = lift_received(code, self.y, self.degGp)
        else:
            if not np.array_equal(ag.ev(lift, code.points), self.y):
                raise ValueError("supplied lift does not evaluate to y")
            pole = lift.pole_order()
            if pole is not None and pole > self.degGp:
                raise ValueError("supplied lift has too large a pole order")
            self.f_y = lift
        self.f_y_pows: list[CurveFn | None] = [None, self.f_y]
        for i in range(2, self.ell + 1):
            self.f_y_pows.append(self.f_y_pows[-1] * self.f_y)
        self.products = [None]  # index by i
        for i in range(1, self.ell + 1):
            self.products.append(self._product_matrix(i))
        self._steps: dict[Divisor, _Step] = {}

    def _product_matrix(self, i: int) -> np.ndarray:
        """(N_i x N_F) matrix of multiplication by f_y^i on monomial coords."""
        count = self.n_amb[i]
        bound = self.degF + i * self.degGp
        cols = np.zeros((count, self.n_f), dtype=np.int64)
        fy_i = self.f_y_pows[i]
        for k, mono in enumerate(self.curve.monomials(self.degF)):
            prod = CurveFn(self.curve, {mono: 1}) * fy_i
            cols[:, k] = fn_to_vec(prod, bound)
        return cols

    def initial_divisor(self) -> Divisor:
        return Divisor.make(self.degF)

    def step(self, divisor: Divisor) -> "_Step":
        got = self._steps.get(divisor)
        if got is None:
            got = _Step(self, divisor)
            self._steps[divisor] = got
        return got


def lift_received(code: ag.AGCode, y, degGprime: int) -> CurveFn:
    """The unique zero-free-variables f in L(degGprime * Qinf) with ev(f) = y."""
    n, g = code.n, code.curve.genus
    if degGprime < n + 2 * g - 1:
        raise ValueError("degGprime too small for a surjective evaluation map")
    count = code.curve.monomial_count(degGprime)
    rows = evaluation_rows(code.curve, code.points, count)
    coeffs = solve_raw(code.field, rows, np.asarray(y, dtype=np.int64))
    if coeffs is None:
        raise DecodeError("evaluation system unexpectedly inconsistent")
    f = fn_from_vec(code.curve, coeffs, degGprime)
    if not np.array_equal(ag.ev(f, code.points), np.asarray(y, dtype=np.int64)):
        raise DecodeError("lift does not evaluate back to y")
    return f


class _Step:
    """All spaces attached to one working divisor F_j."""

    def __init__(self, ctx: DecodeContext, divisor: Divisor):
        self.ctx = ctx
        self.divisor = divisor
        curve, fld = ctx.curve, ctx.field
        code = ctx.code
        n, g = code.n, curve.genus
        self.finite = divisor.finite_dict()
        self.lf_rows = condition_rows(curve, divisor.finite, ctx.n_f)
        self.u1 = []
        self.u2 = []
        self.zcap = []
        self.q_rows = []
        for i in range(1, ctx.ell + 1):
            count_i = ctx.n_amb[i]
            u1 = rr_space(curve, divisor.shift_inf(i * code.degG),
                          ctx.degF + i * ctx.degGp).space.basis
            d_minus = {p: self.finite.get(p, 0) - 1 for p in code.points}
            c2 = condition_rows(curve, d_minus, count_i)
            u2 = kernel_raw(fld, c2)
            t_mat = fld.matmul_raw(c2, np.ascontiguousarray(u1.T))
            # combinations of U1 rows lying in ker(c2) = U2, i.e. U1 ∩ U2
            gamma = kernel_raw(fld, t_mat)
            deg_f_ig = divisor.degree + i * code.degG
            if deg_f_ig < n and gamma.shape[0] != 0:
                raise DecodeError("sum not direct although deg(F + iG) < n")
            zb = fld.matmul_raw(gamma, u1) if gamma.shape[0] else \
                np.zeros((0, count_i), dtype=np.int64)
            # complement-dimension count when no correction space survives
            deg_u2 = divisor.degree + i * ctx.degGp - n
            if 2 * g - 2 < deg_f_ig < n and deg_u2 > 2 * g - 2:
                total = divisor.degree + i * ctx.degGp - g + 1
                dim_z = total - u1.shape[0] - u2.shape[0]
                if dim_z != n - divisor.degree - i * code.degG + g - 1:
                    raise DecodeError("complement dimension violates the count")
            self.u1.append(u1)
            self.u2.append(u2)
            self.zcap.append(zb)
            # rows annihilating c2 @ U1^T on the left: v in U1+U2 <=> c2 v in c2 U1
            left = kernel_raw(fld, np.ascontiguousarray(t_mat.T))
            q = fld.matmul_raw(fld.matmul_raw(left, c2), ctx.products[i]) \
                if left.shape[0] else np.zeros((0, ctx.n_f), dtype=np.int64)
            self.q_rows.append(q)

        stack = [self.lf_rows] + self.q_rows
        self.s_basis = kernel_raw(fld, np.vstack(stack))
        self.dim_s = self.s_basis.shape[0]
        self.dims_si = tuple(
            kernel_raw(fld, np.vstack([self.lf_rows, self.q_rows[i]])).shape[0]
            for i in range(ctx.ell))
        self._scan_data = None

    # -- derived spaces -------------------------------------------------

    def lf_basis(self) -> np.ndarray:
        return kernel_raw(self.ctx.field, self.lf_rows) if self.lf_rows.shape[0] \
            else np.eye(self.ctx.n_f, dtype=np.int64)

    def si_basis(self, i: int) -> np.ndarray:
        fld = self.ctx.field
        return kernel_raw(fld, np.vstack([self.lf_rows, self.q_rows[i - 1]]))

    def _scan_state(self):
        """Product decompositions of the S basis, one pair (u1, u2) per power."""
        if self._scan_data is not None:
            return self._scan_data
        ctx, fld = self.ctx, self.ctx.field
        parts = []
        for i in range(1, ctx.ell + 1):
            u1, u2 = self.u1[i - 1], self.u2[i - 1]
            prods = fld.matmul_raw(ctx.products[i], np.ascontiguousarray(self.s_basis.T))
            if self.dim_s == 0:
                parts.append((np.zeros((ctx.n_amb[i], 0), dtype=np.int64),) * 2)
                continue
            stacked = np.ascontiguousarray(np.vstack([u1, u2]).T)
            alpha, ok = solve_many_raw(fld, stacked, prods)
            if not ok.all():
                raise DecodeError("product of an S element escaped U1 + U2")
            a1 = alpha[:u1.shape[0], :]
            a2 = alpha[u1.shape[0]:, :]
            p1 = fld.matmul_raw(np.ascontiguousarray(u1.T), a1)
            p2 = fld.matmul_raw(np.ascontiguousarray(u2.T), a2)
            parts.append((p1, p2))
        self._scan_data = parts
        return parts

    # -- candidate scan ---------------------------------------------------

    def candidate_dim(self, point) -> int:
        """dim S(F_j - P) via the one-extra-condition reduction."""
        ctx, fld, curve = self.ctx, self.ctx.field, self.ctx.curve
        s = self.dim_s
        if s == 0:
            return 0
        parts = self._scan_state()
        m = -self.finite.get(point, 0)
        rows = [fld.matmul_raw(
            expansion_row(curve, point, m, ctx.n_f).reshape(1, -1),
            np.ascontiguousarray(self.s_basis.T))[0]]
        z_blocks = []
        for i in range(1, ctx.ell + 1):
            p1, p2 = parts[i - 1]
            count_i = ctx.n_amb[i]
            r1 = expansion_row(curve, point, m, count_i).reshape(1, -1)
            r2 = expansion_row(curve, point, m + 1, count_i).reshape(1, -1)
            rows.append(fld.matmul_raw(r1, p1)[0])
            rows.append(fld.matmul_raw(r2, p2)[0])
            zb = self.zcap[i - 1]
            blk = np.zeros((1 + 2 * ctx.ell, zb.shape[0]), dtype=np.int64)
            if zb.shape[0]:
                zt = np.ascontiguousarray(zb.T)
                blk[2 * i - 1] = fld.matmul_raw(r1, zt)[0]
                blk[2 * i] = fld.neg_vec(fld.matmul_raw(r2, zt)[0])
            z_blocks.append(blk)
        mat = np.array(rows, dtype=np.int64)
        if any(b.shape[1] for b in z_blocks):
            zmat = np.hstack([b for b in z_blocks if b.shape[1]])
            full = np.hstack([mat, zmat])
            _, rank_full, _ = fld.rref_raw(full)
            _, rank_z, _ = fld.rref_raw(zmat)
            return s - rank_full + rank_z
        _, rank, _ = fld.rref_raw(mat)
        return s - rank


def s_space(ctx: DecodeContext, divisor: Divisor, i: int) -> Subspace:
    """S_i for the given working divisor, in L(F_j)-basis coordinates."""
    if not (1 <= i <= ctx.ell):
        raise ValueError("power index out of range")
    st = ctx.step(divisor)
    return _to_basis_coords(ctx, st.si_basis(i), st.lf_basis())


def s_intersection(ctx: DecodeContext, divisor: Divisor) -> Subspace:
    """S = intersection of the S_i, in L(F_j)-basis coordinates."""
    st = ctx.step(divisor)
    return _to_basis_coords(ctx, st.s_basis, st.lf_basis())


def s_space_nf(ctx: DecodeContext, divisor: Divisor, i: int | None = None) -> Subspace:
    """Same spaces in raw monomial coordinates (over monomials(degF))."""
    st = ctx.step(divisor)
    basis = st.s_basis if i is None else st.si_basis(i)
    return Subspace(ctx.field, basis, ctx.n_f, reduce=False)


def _to_basis_coords(ctx: DecodeContext, basis_nf: np.ndarray, lf: np.ndarray) -> Subspace:
    if lf.shape[0] == 0:
        return Subspace.zero(ctx.field, 0)
    pivots = [int(np.nonzero(r)[0][0]) for r in lf]
    return Subspace(ctx.field, basis_nf[:, pivots], lf.shape[0])


def ev_space(curve: CabCurve, points, basis_nf: np.ndarray) -> Subspace:
    """Evaluate a monomial-coordinate subspace at points (image in F_q^n)."""
    fld = curve.field
    if basis_nf.shape[0] == 0:
        return Subspace.zero(fld, len(list(points)))
    rows = evaluation_rows(curve, points, basis_nf.shape[1])
    img = fld.matmul_raw(basis_nf, np.ascontiguousarray(rows.T))
    return Subspace(fld, img, img.shape[1])


def adapt_step(ctx: DecodeContext, divisor: Divisor):
    """First (or best, under max-drop) point with dim S(F - P) <= dim S(F) - 2.

    Returns (point, F - P) or None when no such point exists.
    """
    st = ctx.step(divisor)
    if st.dim_s == 0:
        return None
    best = None
    for point in ctx.code.points:
        dim_new = st.candidate_dim(point)
        if dim_new <= st.dim_s - 2:
            if ctx.config.point_policy == FIRST_HIT:
                return point, divisor.sub_point(point)
            drop = st.dim_s - dim_new
            if best is None or drop > best[0]:
                best = (drop, point)
    if best is None:
        return None
    return best[1], divisor.sub_point(best[1])


def recover(ctx: DecodeContext, lam: CurveFn, divisor: Divisor) -> CurveFn:
    """Split lam * f_y and divide the L(F+G'-D) part by lam, exactly."""
    if lam.is_zero():
        raise RecoveryError("zero locator")
    st = ctx.step(divisor)
    fld, curve = ctx.field, ctx.curve
    lam_vec = fn_to_vec(lam, ctx.degF)
    prod = fld.matvec_raw(ctx.products[1], lam_vec)
    u1, u2 = st.u1[0], st.u2[0]
    stacked = np.ascontiguousarray(np.vstack([u1, u2]).T)
    alpha = solve_raw(fld, stacked, prod)
    if alpha is None:
        raise RecoveryError("product does not split into L(F+G) + L(F+G'-D)")
    h_vec = fld.matvec_raw(np.ascontiguousarray(u2.T), alpha[u1.shape[0]:]) \
        if u2.shape[0] else np.zeros(ctx.n_amb[1], dtype=np.int64)
    bound = ctx.degF + ctx.degGp
    count_gp = curve.monomial_count(ctx.degGp)
    cols = np.zeros((ctx.n_amb[1], count_gp), dtype=np.int64)
    for k, mono in enumerate(curve.monomials(ctx.degGp)):
        cols[:, k] = fn_to_vec(lam * CurveFn(curve, {mono: 1}), bound)
    g_vec = solve_raw(fld, cols, h_vec)
    if g_vec is None:
        raise RecoveryError("division by the locator is inconsistent")
    f_e = fn_from_vec(curve, g_vec, ctx.degGp)
    if fn_to_vec(lam * f_e, bound).tolist() != h_vec.tolist():
        raise DecodeError("exact division check failed")
    return f_e


def divisor_minus_error(divisor: Divisor, err_points) -> Divisor:
    d = divisor.finite_dict()
    for p in err_points:
        d[p] = d.get(p, 0) - 1
    return Divisor.make(divisor.inf_coeff, d)


def delta_trace(ctx: DecodeContext, divisor: Divisor, true_e) -> int:
    """dim S(F_j) - l(F_j - D_e); needs the true error (instrumentation)."""
    st = ctx.step(divisor)
    err_pts = [ctx.code.points[i] for i in ag.support(true_e)]
    l_locators = rr_space(ctx.curve, divisor_minus_error(divisor, err_pts),
                          ctx.degF).dim
    return st.dim_s - l_locators


def decode(code: ag.AGCode, y, config: DecoderConfig, true_e=None):
    """Run the full adaptive decoder; returns (Outcome, DecodeTrace).

    ``true_e`` is instrumentation only: when the channel error is known the
    trace carries the gap dim S(F_j) - l(F_j - D_e) and whether the chosen
    points hit the error support.  It never influences the decoding.
    """
    ctx = DecodeContext(code, y, config)
    return decode_context(ctx, true_e=true_e)


def decode_context(ctx: DecodeContext, true_e=None) -> tuple[Outcome, DecodeTrace]:
    code = ctx.code
    trace = DecodeTrace()
    err_support = set(ag.support(true_e)) if true_e is not None else None
    divisor = ctx.initial_divisor()
    for adaptations in range(ctx.config.max_steps + 1):
        st = ctx.step(divisor)
        rec = StepRecord(adaptations, divisor.degree, st.dim_s, st.dims_si)
        if true_e is not None:
            rec.delta = delta_trace(ctx, divisor, true_e)
        trace.steps.append(rec)
        if st.dim_s == 0:
            return Outcome("failure", S_ZERO), trace
        found = adapt_step(ctx, divisor)
        if found is None:
            break
        if adaptations == ctx.config.max_steps:
            return Outcome("failure", NO_LAMBDA), trace
        point, new_div = found
        new_dim = ctx.step(new_div).dim_s
        rec.chosen_point = point.index
        rec.drop = st.dim_s - new_dim
        if st.candidate_dim(point) != new_dim:
            raise DecodeError("incremental and direct step dimensions disagree")
        if rec.drop < 2:
            raise DecodeError("chosen point dropped the dimension by less than 2")
        if err_support is not None:
            rec.chosen_in_support = point.index in err_support
        divisor = new_div
    else:  # pragma: no cover - the budget return above always fires first
        raise DecodeError("adaptation loop left without a stop condition")

    st = ctx.step(divisor)
    lam = fn_from_vec(ctx.curve, st.s_basis[0], ctx.degF)
    try:
        f_e = recover(ctx, lam, divisor)
    except RecoveryError:
        return Outcome("failure", RECOVERY_INCONSISTENT), trace
    err = ag.ev(f_e, code.points)
    if ag.weight(err) > ctx.config.t:
        return Outcome("failure", WEIGHT_EXCEEDED, f_e=f_e, error=err), trace
    word = ctx.field.sub_vec(ctx.y, err)
    if not code.contains(word):
        return Outcome("failure", NOT_CODEWORD, f_e=f_e, error=err), trace
    return Outcome("success", None, f_e=f_e, error=err, codeword=word), trace


def k_space(code: ag.AGCode, divisor: Divisor, y, i: int) -> Subspace:
    """Code-domain kernel: {a in ev(L(F)) : a * y^i in ev(L(F + iG))}.

    Computed without the lift or any decomposition, purely from evaluated
    spaces and duality, so it cross-validates s_space.  F must be supported
    at infinity only.
    """
    if divisor.finite:
        raise ValueError("k_space needs a divisor supported at infinity only")
    fld, curve = code.field, code.curve
    y = np.asarray(y, dtype=np.int64)
    a_rows = evaluation_rows(curve, code.points, curve.monomial_count(divisor.inf_coeff)).T
    a_space = Subspace(fld, np.ascontiguousarray(a_rows), code.n)
    v_rows = evaluation_rows(
        curve, code.points,
        curve.monomial_count(divisor.inf_coeff + i * code.degG)).T
    v_space = Subspace(fld, np.ascontiguousarray(v_rows), code.n)
    h = v_space.annihilator().basis
    ypow = fld.pow_vec(y, i)
    rows = fld.mul_vec(h, ypow[None, :]) if h.shape[0] else h
    if rows.shape[0] == 0:
        return a_space
    constraint = Subspace(fld, kernel_raw(fld, rows), code.n, reduce=False)
    return a_space.intersect(constraint)
