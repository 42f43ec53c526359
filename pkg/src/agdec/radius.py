"""Closed-form decoding radii and parameter-window checks.

All radii are floors of the exact rational bounds; the integer arithmetic
below keeps numerator and denominator together so no floating point is
involved.  ``validate_params`` evaluates the parameter window under which
the power decoder is expected to reach its radius, reporting the evaluated
left-hand sides so a caller can see how far off a configuration is.
"""

from __future__ import annotations

from dataclasses import dataclass


def half_designed(n: int, degG: int) -> int:
    """floor((d*-1)/2) with d* = n - degG."""
    if degG >= n:
        raise ValueError("degG must be smaller than n")
    return (n - degG - 1) // 2


def basic_radius(n: int, g: int, degG: int) -> int:
    """floor((d*-1-g)/2): unique decoding with the genus penalty."""
    return (n - degG - 1 - g) // 2


def sudan_radius(n: int, g: int, degG: int, ell: int, variant: str = "improved") -> int:
    """List-decoding radius for power parameter ell.

    ``basic`` subtracts the full genus, ``improved`` only ell/(ell+1) of it.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    num = 2 * n * ell - ell * (ell + 1) * degG - 2
    den = 2 * (ell + 1)
    if variant == "basic":
        num -= 2 * (ell + 1) * g
    elif variant == "improved":
        num -= 2 * ell * g
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return num // den


def power_radius(n: int, degG: int, ell: int) -> int:
    """Radius of the adaptive power decoder: no genus term at all."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return (2 * ell * n - ell * (ell + 1) * degG - 2 * ell) // (2 * (ell + 1))


@dataclass(frozen=True)
class CodeParams:
    n: int
    g: int
    degG: int
    ell: int
    t: int | None = None
    degF: int | None = None

    def __post_init__(self):
        if not (0 <= self.degG < self.n):
            raise ValueError("need 0 <= degG < n")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.g < 0:
            raise ValueError("genus must be nonnegative")


def validate_params(params: CodeParams) -> dict:
    """Per-condition report for the parameter window of the power decoder.

    Returns a dict of name -> {"ok": bool, "value": evaluated LHS}; the
    overall flag is under "all_ok".  Conditions (with t defaulted to the
    radius and degF to t + 2g):

      radius    t <= power_radius
      window    2n - l(l+1) degG - 4g(l+1) >= 0
      degf      2n + (l-2)(l+1) degG - 6gl - 6g - 2 >= 0
      gain      2n - l(l+1) degG - 2(l^2+l+1) >= 0
      degg      degG >= g - 1
      slack     t <= d* - 3g - 1
      products  degF + l*degG < n
    """
    n, g, dg, ell = params.n, params.g, params.degG, params.ell
    t = params.t if params.t is not None else power_radius(n, dg, ell)
    degF = params.degF if params.degF is not None else t + 2 * g
    dstar = n - dg
    report: dict[str, dict] = {}

    def put(name, value, ok):
        report[name] = {"value": value, "ok": bool(ok)}

    put("radius", t, t <= power_radius(n, dg, ell))
    put("window", 2 * n - ell * (ell + 1) * dg - 4 * g * (ell + 1),
        2 * n - ell * (ell + 1) * dg - 4 * g * (ell + 1) >= 0)
    put("degf", 2 * n + (ell - 2) * (ell + 1) * dg - 6 * g * ell - 6 * g - 2,
        2 * n + (ell - 2) * (ell + 1) * dg - 6 * g * ell - 6 * g - 2 >= 0)
    put("gain", 2 * n - ell * (ell + 1) * dg - 2 * (ell * ell + ell + 1),
        2 * n - ell * (ell + 1) * dg - 2 * (ell * ell + ell + 1) >= 0)
    put("degg", dg, dg >= g - 1)
    put("slack", t, t <= dstar - 3 * g - 1)
    put("products", degF + ell * dg, degF + ell * dg < n)
    report["all_ok"] = all(v["ok"] for v in report.values())
    return report


def radius_table_row(n: int, g: int, degG: int, ell: int) -> dict:
    """All radii for one parameter set (used by the CLI)."""
    return {
        "n": n,
        "g": g,
        "degG": degG,
        "ell": ell,
        "half_designed": half_designed(n, degG),
        "basic": basic_radius(n, g, degG),
        "sudan_basic": sudan_radius(n, g, degG, ell, "basic"),
        "sudan": sudan_radius(n, g, degG, ell, "improved"),
        "power_radius": power_radius(n, degG, ell),
    }
