from pathlib import Path

import pytest

from artifact.abelian import FGAbelianGroup
from artifact.chart import chart_from_groups, chart_from_page, render_svg
from artifact.config import ChartSpec, ConfigError
from artifact.report import golden_svg

GOLDEN = Path(__file__).parent / "golden" / "tmf13_e2.svg"


def test_golden_svg_is_byte_stable():
    assert golden_svg() == GOLDEN.read_text()


def test_eta_and_nu_positions(small_tmf):
    _, _, page = small_tmf
    e2 = page.chain()[0]
    data = chart_from_page(ChartSpec(stems=(0, 8), filtrations=(0, 8)), e2)
    assert "a1bar*a_sigma" in data.cells[(1, 1)]["labels"]
    assert "a3bar*a_sigma^3" in data.cells[(3, 3)]["labels"]


def test_arrows_follow_target_geometry(small_tmf):
    _, _, page = small_tmf
    data = chart_from_page(ChartSpec(stems=(-8, 12), filtrations=(0, 12)), page)
    assert data.arrows
    for x0, y0, x1, y1, r in data.arrows:
        assert x1 == x0 - 1 and y1 == y0 + r and r in (3, 7)


def test_range_outside_window(small_tmf):
    _, _, page = small_tmf
    with pytest.raises(ValueError):
        chart_from_page(ChartSpec(stems=(-40, 0), filtrations=(0, 4)), page)
    with pytest.raises(ValueError):
        chart_from_page(ChartSpec(stems=(0, 4), filtrations=(0, 99)), page)


def test_empty_chart_is_grid_only():
    data = chart_from_groups(ChartSpec(stems=(0, 3), filtrations=(0, 2)), {})
    svg = render_svg(data)
    assert "<line" in svg and "<circle" not in svg and "<title>" not in svg


def test_count_badge():
    g = FGAbelianGroup.from_orders(2, [2, 2])
    data = chart_from_groups(ChartSpec(stems=(0, 0), filtrations=(0, 0)), {(0, 0): g})
    assert ">4</text>" in render_svg(data)


def test_slice_chart_shows_bottom_cell():
    from artifact.slice import slice_cells, slice_e2

    groups = slice_e2(slice_cells(-60, 20), (-12, 0))
    data = chart_from_groups(ChartSpec(stems=(-12, 0), filtrations=(-12, 12)), groups)
    assert any(x == -9 and c["free"] for (x, _), c in data.cells.items())


def test_spec_validation():
    with pytest.raises(ConfigError):
        ChartSpec(mode="spiral")
    with pytest.raises(ConfigError):
        ChartSpec(stems=(3, 1))
    spec = ChartSpec.from_json({"stems": [0, 4], "mode": "rho-graded-band", "band": 1})
    assert spec.stems == (0, 4)
    assert ChartSpec.from_json(spec.to_json()) == spec
