"""Timing comparison of the two linear-algebra backends.

Benchmarks the raw kernels (elimination and matrix product at the shapes
the decoder actually uses) and one full beyond-half decode per backend.
Invoked by ``agdec bench`` or ``python bench/bench_backends.py``.
"""

from __future__ import annotations

import time

import numpy as np

from . import agcode as ag
from . import backend
from . import curve as cv
from . import decoder as dec
from . import experiment as xp
from .algebra import field_create


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_benchmark(out=print) -> dict:
    f16 = field_create(2, 4)
    rng = np.random.default_rng(0)
    m = rng.integers(0, 16, size=(80, 190)).astype(np.int64)
    a = rng.integers(0, 16, size=(70, 190)).astype(np.int64)
    b = rng.integers(0, 16, size=(190, 60)).astype(np.int64)

    h16 = cv.hermitian_curve(f16)
    code = ag.code_create(h16, h16.affine_points(), 8)
    y, _, e = xp.random_channel(code, 34, xp.trial_rng(9, 0))
    cfg = dec.DecoderConfig(ell=2, t=34, point_policy=dec.MAX_DROP)

    results: dict[str, dict[str, float]] = {}
    for name in backend.available_backends():
        with backend.use(name):
            row = {
                "rref 80x190": _time(lambda: f16.rref_raw(m), 20),
                "matmul 70x190x60": _time(lambda: f16.matmul_raw(a, b), 20),
                "decode n=64 ell=2": _time(lambda: dec.decode(code, y, cfg), 3),
            }
        results[name] = row

    header = f"{'kernel':24s}" + "".join(f"{name:>12s}" for name in results)
    out(header)
    kernels = next(iter(results.values())).keys()
    for kernel in kernels:
        line = f"{kernel:24s}"
        for name in results:
            line += f"{results[name][kernel] * 1e3:10.2f}ms"
        out(line)
    if len(results) == 2:
        pure_t = results["pure"]["decode n=64 ell=2"]
        cy_t = results.get("cython", {}).get("decode n=64 ell=2")
        if cy_t:
            out(f"decode speedup (cython over pure): {pure_t / cy_t:.1f}x")
    return results
