"""Brute-force references: exhaustive decoding, definition-level locator
spaces, and adversarial equidistant received words.

Nothing here shares code with the decoder's fast paths: the nearest-codeword
search enumerates the full message space, and the locator-space reference
solves one stacked membership system per basis product instead of using the
decoder's quotient construction.  Tests pin the two sides against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import agcode as ag
from .algebra import Subspace, kernel_raw
from .decoder import DecodeContext
from .rrspace import Divisor


@dataclass(frozen=True)
class OracleBudget:
    """Cap on exhaustive enumeration (number of messages)."""

    max_messages: int = 10**6

    def check(self, count: int) -> None:
        if count > self.max_messages:
            raise ValueError(f"enumeration of {count} messages exceeds the budget")


def _codeword_batches(code: ag.AGCode, batch: int = 4096):
    """Yield (messages, codewords) blocks covering the whole code."""
    q, k = code.field.q, code.dim
    spaces = [range(q)] * k
    block = []
    for msg in itertools.product(*spaces):
        block.append(msg)
        if len(block) == batch:
            msgs = np.array(block, dtype=np.int64)
            yield msgs, code.field.matmul_raw(msgs, code.gen_matrix)
            block = []
    if block:
        msgs = np.array(block, dtype=np.int64)
        yield msgs, code.field.matmul_raw(msgs, code.gen_matrix)


def nearest_codewords(code: ag.AGCode, y, radius: int,
                      budget: OracleBudget = OracleBudget()):
    """All codewords within the radius, as (codeword, distance), sorted."""
    budget.check(code.field.q ** code.dim)
    y = np.asarray(y, dtype=np.int64)
    found = []
    for _, words in _codeword_batches(code):
        dist = np.count_nonzero(words != y[None, :], axis=1)
        for idx in np.nonzero(dist <= radius)[0]:
            found.append((words[idx].copy(), int(dist[idx])))
    found.sort(key=lambda cd: (cd[1], cd[0].tolist()))
    return found


def min_distance_exhaustive(code: ag.AGCode,
                            budget: OracleBudget = OracleBudget()) -> int:
    """Exact minimum weight over all nonzero codewords."""
    budget.check(code.field.q ** code.dim)
    best = code.n + 1
    for msgs, words in _codeword_batches(code):
        w = np.count_nonzero(words, axis=1)
        w = w[np.any(msgs != 0, axis=1)]
        if w.size:
            best = min(best, int(w.min()))
    return best


def s_space_reference(ctx: DecodeContext, divisor: Divisor, i: int) -> Subspace:
    """Definition-level S_i over monomial coordinates.

    Independent route: stack the products against explicit bases of
    L(F + iG) and L(F + iG' - D) and read the locator coefficients off the
    kernel of the combined system, with no quotient or annihilator step.
    """
    fld = ctx.field
    st = ctx.step(divisor)
    lf = st.lf_basis()
    if lf.shape[0] == 0:
        return Subspace.zero(fld, ctx.n_f)
    prods = fld.matmul_raw(ctx.products[i], np.ascontiguousarray(lf.T))
    uu = np.vstack([st.u1[i - 1], st.u2[i - 1]])
    if uu.shape[0]:
        system = np.hstack([prods, fld.neg_vec(uu.T)])
    else:
        system = prods
    # kernel rows are pairs (c, mu) with prods @ c = uu.T @ mu
    sols = kernel_raw(fld, np.ascontiguousarray(system))
    coeff_part = sols[:, :lf.shape[0]]
    vecs = fld.matmul_raw(coeff_part, lf)
    return Subspace(fld, vecs, ctx.n_f)


def worst_case(code: ag.AGCode, t: int, rng,
               budget: OracleBudget = OracleBudget()):
    """A received word equidistant (= t) from two codewords.

    Finds a codeword difference of weight exactly 2t (exhaustively when the
    code is small enough, else by random sampling), then moves t of its
    support positions from one codeword toward the other.
    Returns (y, c1, c2).
    """
    if not 0 < 2 * t <= code.n:
        raise ValueError("need 0 < 2t <= n")
    fld = code.field
    diff = None
    try:
        budget.check(fld.q ** code.dim)
    except ValueError:
        for _ in range(200000):
            msg = rng.integers(0, fld.q, code.dim)
            cand = code.encode(msg)
            if ag.weight(cand) == 2 * t:
                diff = cand
                break
    else:
        for msgs, words in _codeword_batches(code):
            w = np.count_nonzero(words, axis=1)
            hits = np.nonzero(w == 2 * t)[0]
            if hits.size:
                diff = words[hits[0]].copy()
                break
    if diff is None:
        raise ValueError(f"no codeword pair at distance {2 * t} found")
    c1 = code.encode(rng.integers(0, fld.q, code.dim))
    c2 = fld.add_vec(c1, diff)
    supp = ag.support(diff)
    flip = rng.choice(len(supp), size=t, replace=False)
    y = c1.copy()
    for pos in (supp[int(k)] for k in flip):
        y[pos] = c2[pos]
    assert ag.hamming(y, c1) == t and ag.hamming(y, c2) == t
    return y, c1, c2
