"""Decoding of algebraic geometry codes beyond half the designed distance.

Subpackages/modules:

* :mod:`agdec.algebra`  - finite fields and exact linear algebra
* :mod:`agdec.curve`    - C_{a,b} plane curves, one-point function spaces
* :mod:`agdec.rrspace`  - divisors and Riemann-Roch spaces
* :mod:`agdec.agcode`   - evaluation codes, duals, star products
* :mod:`agdec.decoder`  - the locator-space decoder (power parameter ell)
* :mod:`agdec.radius`   - closed-form decoding radii and parameter checks
* :mod:`agdec.oracle`   - brute-force references used by the test suite
* :mod:`agdec.experiment` / :mod:`agdec.cli` - batch harness and CLI

The usual entry points are re-exported at the top level::

    from agdec import field_create, hermitian_curve, code_create, decode
"""

from .agcode import code_create, ev
from .algebra import field_create
from .backend import BACKEND
from .curve import curve_create, hermitian_curve, line
from .decoder import DecodeContext, DecoderConfig, decode
from .radius import half_designed, power_radius, sudan_radius
from .rrspace import Divisor, ell, rr_space

__all__ = [
    "BACKEND", "code_create", "curve_create", "decode", "DecodeContext",
    "DecoderConfig", "Divisor", "ell", "ev", "field_create",
    "half_designed", "hermitian_curve", "line", "power_radius", "rr_space",
    "sudan_radius",
]
__version__ = "0.1.0"
