import pytest

from artifact.grading import Degree
from artifact.oracles import einf_closed_form
from artifact.tmf13 import (
    RELATION_FAMILIES,
    SCENARIOS,
    build_scenario,
    check_strongly_even,
    count_monomials,
    eta_nu_report,
    near_rho_hfpss_check,
    periodicity_check,
    presentation_free_rank,
    presentation_torsion_rank,
    truncated_coefficients,
    verify_presentation,
)


def test_scenarios():
    assert SCENARIOS == ("tmf13", "tmf13_a1inv", "tmf13_a3inv", "tmf13_a1a3inv", "TMF13")
    sc = build_scenario("tmf13_a1a3inv", truncation=3)
    assert sc.lower_bounds() == {"a1bar": -3, "a3bar": -3}
    assert build_scenario("tmf13").truncation is None
    with pytest.raises(ValueError):
        build_scenario("tmf")


def test_count_monomials():
    assert [count_monomials(k) for k in range(8)] == [1, 1, 1, 2, 2, 2, 3, 3]
    assert count_monomials(-1) == 0


@pytest.mark.parametrize("deg, rank", [((0, 0), 1), ((4, -4), 1), ((8, -8), 1), ((2, -2), 1), ((1, 1), 1), ((6, 6), 3), ((1, 0), 0)])
def test_presentation_free_rank(deg, rank):
    assert presentation_free_rank(Degree(*deg)) == rank


def test_presentation_matches_closed_form():
    for a in range(-8, 9):
        for b in range(-8, 9):
            for s in range(1, 17):
                assert presentation_torsion_rank(a, b, s) == einf_closed_form((a, b, s))[1], (a, b, s)


def test_presentation_on_small_window(small_tmf):
    sc, w, page = small_tmf
    rep = verify_presentation(page, w)
    assert rep.ok, rep.mismatches[:3]
    assert set(rep.relations) == set(RELATION_FAMILIES)
    assert all(v["checked"] > 0 for v in rep.relations.values())


def test_eta_nu_powers(small_tmf):
    _, _, page = small_tmf
    r = eta_nu_report(page)
    assert r["eta"] == {1: True, 2: True, 3: False, 4: False}
    assert r["nu"] == {1: True, 2: True, 3: False, 4: False}


def test_eta_cubed_is_a_d3_boundary(small_tmf):
    sc, _, page = small_tmf
    d3 = sc.differentials[0]
    from artifact.sseq import leibniz_extend

    assert leibniz_extend(d3, sc.el(u_2sigma=1, a1bar=2)) == sc.el(a_sigma=3, a1bar=3)
    assert page.is_boundary(sc.el(a_sigma=3, a1bar=3))


def test_strong_evenness_small(small_tmf):
    _, _, page = small_tmf
    ev = check_strongly_even(page, range(1, 7))
    assert all(r["odd_vanishes"] and r["rank_ok"] for r in ev["rows"])


def test_periodicity():
    r = periodicity_check()
    assert r["ok"]
    row = r["results"][str(r["truncations"][0])]
    assert row["u^4"]["status"] == "permanent"
    assert row["Dbar u^6"]["r"] == 7


def test_truncated_coefficients():
    c = truncated_coefficients(build_scenario("tmf13_a3inv", truncation=2), range(-8, 9))
    assert c[0].free_rank == 3
    assert c[-8].free_rank == 1
    assert 1 not in c or c[1].is_zero


def test_near_rho_single_scenario():
    r = near_rho_hfpss_check("tmf13_a1inv", k_max=4)
    assert r["ok"], r["failures"][:3]
