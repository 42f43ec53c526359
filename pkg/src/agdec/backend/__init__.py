"""Backend selection for the GF(q) matrix kernels.

The compiled extension (``agdec.backend._core``) is used when available,
falling back to the numpy implementation in ``pure.py`` otherwise.  Set the
environment variable ``AGDEC_BACKEND`` to ``pure`` or ``cython`` to force a
choice (``cython`` raises if the extension was not built).  Both backends
are bit-identical; ``bench/bench_backends.py`` compares their speed.
"""

from __future__ import annotations

import os

from . import pure

_requested = os.environ.get("AGDEC_BACKEND", "auto").lower()

if _requested == "pure":
    impl = pure
elif _requested in ("auto", "cython"):
    try:
        from . import _core as impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "AGDEC_BACKEND=cython requested but agdec.backend._core is not "
                "built; run `pip install -e . --no-build-isolation` or use "
                "AGDEC_BACKEND=pure"
            ) from None
        impl = pure
else:
    raise ValueError(f"unknown AGDEC_BACKEND value: {_requested!r}")

BACKEND = impl.NAME

rref_in_place = impl.rref_in_place
matmul = impl.matmul


def available_backends():
    """Names of the backends importable in this environment."""
    names = [pure.NAME]
    try:
        from . import _core  # noqa: F401
    except ImportError:
        pass
    else:
        names.append(_core.NAME)
    return names


def _module_for(name: str):
    if name == "pure":
        return pure
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")


class use:
    """Temporarily dispatch the kernels to a named backend (benchmarking)."""

    def __init__(self, name: str):
        self.name = name
        self._saved = None

    def __enter__(self):
        global rref_in_place, matmul, BACKEND
        self._saved = (rref_in_place, matmul, BACKEND)
        mod = _module_for(self.name)
        rref_in_place, matmul, BACKEND = mod.rref_in_place, mod.matmul, mod.NAME
        return self

    def __exit__(self, *exc):
        global rref_in_place, matmul, BACKEND
        rref_in_place, matmul, BACKEND = self._saved
        return False
