"""Shared fixtures: fields, curves and codes are session-scoped because
table and point-cache construction dominates setup time."""

import pytest

from agdec import agcode as ag
from agdec import curve as cv
from agdec.algebra import field_create


@pytest.fixture(scope="session")
def f7():
    return field_create(7)


@pytest.fixture(scope="session")
def f9():
    return field_create(3, 2)


@pytest.fixture(scope="session")
def f11():
    return field_create(11)


@pytest.fixture(scope="session")
def f16():
    return field_create(2, 4)


@pytest.fixture(scope="session")
def f343():
    return field_create(7, 3)


@pytest.fixture(scope="session")
def herm9(f9):
    return cv.hermitian_curve(f9)


@pytest.fixture(scope="session")
def herm16(f16):
    return cv.hermitian_curve(f16)


@pytest.fixture(scope="session")
def line11(f11):
    return cv.line(f11)


@pytest.fixture(scope="session")
def code9_8(herm9):
    """[27, 6] one-point Hermitian code with designed distance 19."""
    return ag.code_create(herm9, herm9.affine_points(), 8)


@pytest.fixture(scope="session")
def code9_3(herm9):
    """[27, 2] code used for the beyond-half and worst-case runs."""
    return ag.code_create(herm9, herm9.affine_points(), 3)


@pytest.fixture(scope="session")
def code9_6(herm9):
    """[27, 4] code with degG = 2g, the window for the kernel equalities."""
    return ag.code_create(herm9, herm9.affine_points(), 6)


@pytest.fixture(scope="session")
def code16_8(herm16):
    """[64, 4] Hermitian code over GF(16) with d* = 56."""
    return ag.code_create(herm16, herm16.affine_points(), 8)


@pytest.fixture(scope="session")
def rs10_4(line11):
    """[10, 4] Reed-Solomon code over GF(11)."""
    return ag.code_create(line11, line11.affine_points()[:10], 3)
