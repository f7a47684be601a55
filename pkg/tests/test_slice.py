import pytest

from artifact.grading import Degree
from artifact.mackey import named_mackey
from artifact.slice import (
    SliceCell,
    band_check,
    forced_negative_differentials,
    pi_compactified,
    slice_cells,
    slice_e2,
    slice_e2_mackey,
    underlying_euler_check,
    validate_index_map,
)
from artifact.tmf13 import build_scenario, truncated_coefficients


def test_cells_by_index():
    assert [c.monomial for c in slice_cells(6, 6)] == [(3, 0), (0, 1)]
    assert slice_cells(-8, -1) == []
    (bottom,) = slice_cells(-9, -9)
    assert bottom.label() == "1/(a1bar*a3bar)"
    assert bottom.dimension == Degree(-5, -4)
    assert bottom.to_json()["label"] == "1/(a1bar*a3bar)"


def test_dimension_and_index_agree():
    for c in slice_cells(-60, 60):
        assert c.dimension.underlying_dimension == c.slice_index


def test_index_map_anchors():
    assert validate_index_map() == {"pi_-9": "Z[1/3]", "pi_-5-2rho": "Z*"}


def test_bottom_cell_mackey():
    ((cell, m),) = [(c, m) for c, m in slice_e2_mackey(slice_cells(-9, -9), Degree(-5, -4))]
    assert m == named_mackey("Z")


@pytest.mark.parametrize("n, text", [(0, "Z[1/3]"), (-9, "Z[1/3]"), (-5, "0"), (12, "Z[1/3]^3"), (-13, "Z[1/3]")])
def test_pi_compactified(n, text):
    assert pi_compactified(n).pretty() == text


def test_gap():
    assert all(pi_compactified(n).is_zero for n in range(-8, 0))


def test_euler():
    assert underlying_euler_check((-30, 30))["ok"]


def test_forced_differentials_statuses():
    chart = slice_e2(slice_cells(-70, 40), (-24, 24))
    rows = forced_negative_differentials(chart)
    statuses = [r["status"] for r in rows]
    assert "inconsistent" not in statuses
    assert statuses.count("forced") == 42
    for r in rows:
        if r["status"] == "forced":
            g, h = r["monomial"]
            assert r["r"] == (3 if g >= 3 else 7)
    assert forced_negative_differentials({}) == []


@pytest.mark.parametrize("name", ["tmf13", "tmf13_a1inv"])
def test_band(name):
    coeffs = truncated_coefficients(build_scenario(name, truncation=5), range(-60, 61))
    assert band_check(coeffs, range(-6, 7))["ok"]


def test_cell_homotopy_of_positive_cell():
    c = SliceCell("positive", (1, 0))
    assert c.homotopy(Degree(1, 1)) == named_mackey("Z")
