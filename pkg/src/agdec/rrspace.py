"""Divisors of the form ``m*Qinf - E`` and their function spaces.

Every divisor the decoder touches has a single positive coefficient at the
point at infinity and nonpositive coefficients at affine rational points,
so the function space L(D) is cut out of the one-point space
L(inf_coeff * Qinf) by vanishing conditions: a coefficient ``-m`` at P
demands the first m local-expansion coefficients at P to vanish.  Spaces
are returned as coefficient subspaces over the monomial basis of a chosen
ambient one-point space, so that sums, intersections and projections of
different spaces can be carried out in one coordinate system (monomial
lists for nested bounds are prefixes of one another).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Subspace, kernel_raw
from .curve import AffinePoint, CabCurve, expansion_row


@dataclass(frozen=True)
class Divisor:
    """``inf_coeff * Qinf + sum(mult_P * P)`` with every ``mult_P < 0``."""

    inf_coeff: int
    finite: tuple[tuple[AffinePoint, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for point, mult in self.finite:
            if mult >= 0:
                raise ValueError("finite multiplicities must be negative")
            if point in seen:
                raise ValueError("duplicate finite point")
            seen.add(point)

    @staticmethod
    def make(inf_coeff: int, finite=None) -> "Divisor":
        items = []
        if finite:
            for point, mult in (finite.items() if isinstance(finite, dict) else finite):
                if mult:
                    items.append((point, mult))
        items.sort(key=lambda pm: (pm[0].x, pm[0].y))
        return Divisor(inf_coeff, tuple(items))

    @property
    def degree(self) -> int:
        return self.inf_coeff + sum(m for _, m in self.finite)

    def finite_dict(self) -> dict[AffinePoint, int]:
        return dict(self.finite)

    def shift_inf(self, delta: int) -> "Divisor":
        return Divisor(self.inf_coeff + delta, self.finite)

    def sub_point(self, point: AffinePoint) -> "Divisor":
        d = self.finite_dict()
        d[point] = d.get(point, 0) - 1
        return Divisor.make(self.inf_coeff, d)

    def sub_points(self, points) -> "Divisor":
        d = self.finite_dict()
        for point in points:
            d[point] = d.get(point, 0) - 1
        return Divisor.make(self.inf_coeff, d)

    def __le__(self, other: "Divisor") -> bool:
        if self.inf_coeff > other.inf_coeff:
            return False
        mine = self.finite_dict()
        theirs = other.finite_dict()
        return all(mine.get(p, 0) <= theirs.get(p, 0)
                   for p in set(mine) | set(theirs))

    def __repr__(self):
        tail = "".join(f"{m:+d}P{p.index}" for p, m in self.finite)
        return f"Div({self.inf_coeff}Qinf{tail})"


@dataclass(frozen=True)
class RRSpace:
    """L(divisor) as a coefficient subspace over monomials(ambient_bound)."""

    curve: CabCurve
    divisor: Divisor
    ambient_bound: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def condition_rows(curve: CabCurve, finite, count: int) -> np.ndarray:
    """Stacked vanishing-condition rows for the first ``count`` monomials.

    ``finite`` maps points to negative multiplicities; ``-m`` contributes the
    expansion rows of orders 0..m-1 at that point.
    """
    rows = []
    items = sorted(finite.items() if isinstance(finite, dict) else finite,
                   key=lambda pm: (pm[0].x, pm[0].y))
    for point, mult in items:
        for order in range(-mult):
            rows.append(expansion_row(curve, point, order, count))
    if not rows:
        return np.zeros((0, count), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def rr_space(curve: CabCurve, divisor: Divisor, ambient_bound: int | None = None) -> RRSpace:
    """Compute L(divisor) over the monomial basis of L(ambient_bound * Qinf)."""
    if ambient_bound is None:
        ambient_bound = max(divisor.inf_coeff, 0)
    if ambient_bound < divisor.inf_coeff:
        raise ValueError("ambient bound smaller than the pole order at infinity")
    for point, _ in divisor.finite:
        if point.curve is not curve:
            raise ValueError("finite point on a different curve")
    field = curve.field
    ambient_dim = curve.monomial_count(ambient_bound)
    if divisor.degree < 0 or divisor.inf_coeff < 0:
        return RRSpace(curve, divisor, ambient_bound,
                       Subspace.zero(field, ambient_dim))
    count = curve.monomial_count(divisor.inf_coeff)
    rows = condition_rows(curve, divisor.finite, count)
    if rows.shape[0] == 0:
        basis = np.eye(count, dtype=np.int64)
    else:
        basis = kernel_raw(field, rows)
    if ambient_dim > count:
        basis = np.hstack([basis, np.zeros((basis.shape[0], ambient_dim - count),
                                           dtype=np.int64)])
    return RRSpace(curve, divisor, ambient_bound,
                   Subspace(field, basis, ambient_dim, reduce=False))


def ell(curve: CabCurve, divisor: Divisor) -> int:
    """Dimension of L(divisor)."""
    return rr_space(curve, divisor).dim
