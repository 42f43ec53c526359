"""Text formats for curves, code descriptors, word files and configs.

Curve specification (one directive per line, ``#`` comments allowed)::

    field 2 4          # p k
    cab 4 5            # a b  (the line is cab 1 1 / term 1 0 1)
    term 5 0 1         # i j coeff   y^a = sum coeff * x^i y^j
    term 0 1 1

Field-element coefficients are integer vectors in the polynomial basis,
comma separated, low degree first (a bare integer is a constant).  A code
descriptor adds ``degG <int>`` and optional ``points <count>`` (prefix of
the deterministic point order) to the same file.  Word files hold
whitespace-separated element tuples, e.g. ``0 1 2,1 0,1``.

Experiment configs are ``key = value`` lines; see ExperimentConfig for the
keys.
"""

from __future__ import annotations

import numpy as np

from . import agcode as ag
from .algebra import Field, field_create
from .curve import CabCurve, curve_create


class FormatError(ValueError):
    pass


def _directive_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_element(field: Field, token: str) -> int:
    try:
        coeffs = [int(c) for c in token.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad element {token!r}") from exc
    return field.elem(coeffs).code


def parse_curve_text(text: str) -> tuple[CabCurve, dict]:
    """Parse a curve (plus any code-descriptor keys) from text.

    Returns (curve, extras) where extras may carry ``degG`` and ``points``.
    """
    field = None
    ab = None
    terms: list[tuple[int, int, str]] = []
    extras: dict = {}
    for lineno, line in _directive_lines(text):
        parts = line.split()
        head, args = parts[0], parts[1:]
        try:
            if head == "field":
                field = field_create(int(args[0]), int(args[1]))
            elif head == "cab":
                ab = (int(args[0]), int(args[1]))
            elif head == "term":
                terms.append((int(args[0]), int(args[1]), args[2]))
            elif head == "degG":
                extras["degG"] = int(args[0])
            elif head == "points":
                extras["points"] = int(args[0])
            else:
                raise FormatError(f"line {lineno}: unknown directive {head!r}")
        except (IndexError, ValueError) as exc:
            raise FormatError(f"line {lineno}: cannot parse {line!r}") from exc
    if field is None or ab is None:
        raise FormatError("curve text needs `field` and `cab` lines")
    coeffs = {}
    for i, j, tok in terms:
        coeffs[(i, j)] = parse_element(field, tok)
    return curve_create(field, ab[0], ab[1], coeffs), extras


def format_curve_text(curve: CabCurve, degG: int | None = None,
                      points: int | None = None) -> str:
    from .algebra import _digits
    out = [f"field {curve.field.p} {curve.field.k}", f"cab {curve.a} {curve.b}"]
    for (i, j), c in sorted(curve.coeffs.items()):
        tok = ",".join(str(d) for d in _digits(c, curve.field.p, curve.field.k))
        out.append(f"term {i} {j} {tok}")
    if degG is not None:
        out.append(f"degG {degG}")
    if points is not None:
        out.append(f"points {points}")
    return "\n".join(out) + "\n"


def parse_code_text(text: str) -> ag.AGCode:
    curve, extras = parse_curve_text(text)
    if "degG" not in extras:
        raise FormatError("code descriptor needs a `degG` line")
    pts = curve.affine_points()
    if "points" in extras:
        count = extras["points"]
        if not 0 < count <= len(pts):
            raise FormatError(f"points = {count} out of range (curve has {len(pts)})")
        pts = pts[:count]
    return ag.code_create(curve, pts, extras["degG"])


def load_word(field: Field, text: str, expect_len: int | None = None) -> np.ndarray:
    word = ag.parse_vector(field, text)
    if expect_len is not None and word.shape[0] != expect_len:
        raise FormatError(f"word length {word.shape[0]}, expected {expect_len}")
    return word


def parse_config_text(text: str) -> dict[str, str]:
    """``key = value`` lines into a dict (later keys win)."""
    out: dict[str, str] = {}
    for lineno, line in _directive_lines(text):
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
