import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agdec import radius as rad
from agdec.radius import CodeParams


def test_half_designed_examples():
    assert rad.half_designed(200, 19) == 90
    assert rad.half_designed(200, 46) == 76
    assert rad.half_designed(10, 9) == 0
    with pytest.raises(ValueError):
        rad.half_designed(10, 10)


def test_basic_radius_examples():
    assert rad.basic_radius(27, 3, 8) == 7
    assert rad.basic_radius(200, 10, 19) == 85
    assert rad.basic_radius(64, 0, 8) == rad.half_designed(64, 8)


def test_sudan_examples():
    assert rad.sudan_radius(200, 10, 19, 2, "improved") == 107
    assert rad.sudan_radius(200, 10, 46, 2, "improved") == 80
    assert rad.sudan_radius(64, 6, 8, 2, "improved") == 30
    # genus 0: the two variants agree
    for dg in range(1, 9):
        assert rad.sudan_radius(10, 0, dg, 2, "basic") == rad.sudan_radius(10, 0, dg, 2, "improved")
    with pytest.raises(ValueError):
        rad.sudan_radius(10, 0, 3, 2, "fancy")


def test_power_radius_examples():
    assert rad.power_radius(200, 19, 2) == 113
    assert rad.power_radius(200, 46, 2) == 86
    assert rad.power_radius(64, 8, 2) == 34
    # ell = 1 reduces to half the designed distance (up to flooring)
    for n in (20, 64, 200):
        for dg in range(1, n - 1, 7):
            assert rad.power_radius(n, dg, 1) == (2 * n - 2 * dg - 2) // 4


def test_table_one_third_and_fourth_columns():
    # ell = 3 rows: formulas evaluated directly
    assert rad.sudan_radius(200, 10, 19, 3, "improved") == 113
    assert rad.power_radius(200, 19, 3) == 120


def test_monotonic_in_degG():
    from fractions import Fraction
    for ell in (1, 2, 3):
        vals = [rad.power_radius(200, dg, ell) for dg in range(9, 60)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        exact = [Fraction(2 * ell * 200 - ell * (ell + 1) * dg - 2 * ell, 2 * (ell + 1))
                 for dg in range(9, 60)]
        assert all(a > b for a, b in zip(exact, exact[1:]))


def test_power_exceeds_sudan_on_valid_window():
    # over the whole ell=2 window of a genus-10 length-200 code
    g, n, ell = 10, 200, 2
    lo, hi = g - 1, (n - 6 * g) // 3
    for dg in range(lo, hi + 1):
        h = rad.half_designed(n, dg)
        s = rad.sudan_radius(n, g, dg, ell)
        p = rad.power_radius(n, dg, ell)
        assert h <= s <= p
        # the gain over the list decoder is the waived genus share
        assert p - s in (ell * g // (ell + 1), ell * g // (ell + 1) + 1)


@given(st.integers(2, 4), st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_radius_increases_with_ell_under_gain_condition(ell, g):
    from fractions import Fraction
    n, dg = 240, max(g - 1, 1)

    def exact(ll):
        return Fraction(2 * ll * n - ll * (ll + 1) * dg - 2 * ll, 2 * (ll + 1))

    if 2 * n - ell * (ell + 1) * dg - 2 * (ell * ell + ell + 1) >= 0:
        assert exact(ell - 1) < exact(ell)
        assert rad.power_radius(n, dg, ell - 1) <= rad.power_radius(n, dg, ell)


def test_validate_params_examples():
    rep = rad.validate_params(CodeParams(200, 10, 19, 2))
    assert rep["all_ok"]
    rep = rad.validate_params(CodeParams(64, 6, 8, 2, t=34))
    assert rep["window"]["value"] == 8 and rep["window"]["ok"]
    assert rep["all_ok"]
    rep = rad.validate_params(CodeParams(64, 6, 4, 2))  # degG = g - 2
    assert not rep["degg"]["ok"]
    assert not rep["all_ok"]


def test_validate_params_window_bounds():
    # ell = 2 window: g - 1 <= degG <= (n - 6g)/3
    n, g = 200, 10
    for dg in range(g - 1, (n - 6 * g) // 3 + 1):
        rep = rad.validate_params(CodeParams(n, g, dg, 2))
        assert rep["window"]["ok"] and rep["degg"]["ok"]
    rep = rad.validate_params(CodeParams(n, g, (n - 6 * g) // 3 + 2, 2))
    assert not rep["window"]["ok"]
    # ell = 3 window: g - 1 <= degG <= (n - 8g)/6
    for dg in range(g - 1, (n - 8 * g) // 6 + 1):
        rep = rad.validate_params(CodeParams(n, g, dg, 3))
        assert rep["window"]["ok"]


def test_code_params_validation():
    with pytest.raises(ValueError):
        CodeParams(10, 0, 10, 1)
    with pytest.raises(ValueError):
        CodeParams(10, -1, 3, 1)
    with pytest.raises(ValueError):
        CodeParams(10, 0, 3, 0)
