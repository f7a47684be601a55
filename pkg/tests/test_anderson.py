import pytest

from artifact.anderson import (
    ANDERSON_SHIFT,
    HZ_STAR_SHIFT,
    certify_perfect,
    dual_cell,
    dual_cell_check,
    serre_pairing,
    uct_check,
)
from artifact.grading import Degree
from artifact.slice import slice_cells


def test_shifts():
    assert ANDERSON_SHIFT == Degree(7, 2)
    assert HZ_STAR_SHIFT == Degree(2, -2)


@pytest.mark.parametrize("k", range(0, 31))
def test_serre_pairing_perfect(k):
    m = serre_pairing(k)
    assert len(m.rows) == len(m.cols)
    assert certify_perfect(m)


def test_certify_perfect_over_z_one_third():
    assert certify_perfect([[1, 0], [0, 3]])
    assert not certify_perfect([[1, 0], [0, 2]])
    with pytest.raises(ValueError):
        certify_perfect([[1, 0]])


def test_dual_of_unit_cell_is_bottom_cell():
    (unit,) = slice_cells(0, 0)
    assert dual_cell(unit) == Degree(-5, -4)


def test_dual_cells_pair_up():
    r = dual_cell_check(slice_cells(-40, 40))
    assert r["ok"]
    assert not r["unmatched"]
    assert r["involution"]


def test_uct():
    assert uct_check(range(-30, 31))["ok"]
