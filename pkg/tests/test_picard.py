import pytest

from artifact.abelian import FGAbelianGroup
from artifact.grading import Degree
from artifact.picard import (
    ASSUMPTIONS,
    TARGETS,
    algebraic_pic_suspensions,
    assemble_order_bound,
    irreducible_linear,
    mv_assemble,
    picard_pipeline,
    picard_ss_zero_column,
    presented_quotient,
    smallest_period,
    unit_degrees,
)


def test_presented_quotient():
    g = presented_quotient([[8, -8], [3, 3]], ["1", "sigma"])
    assert g.pretty() == "Z/48"
    h = presented_quotient([[8, -8]], ["1", "sigma"])
    assert (h.pretty(), h.generator_labels) == ("Z + Z/8", ("sigma", "1-sigma"))


@pytest.mark.parametrize("target, order", [("TMF13", 6), ("a1inv", 2), ("a3inv", 6), ("a1a3inv", 2)])
def test_algebraic_orders(target, order):
    assert algebraic_pic_suspensions(unit_degrees(target)).order() == order


def test_unit_degrees_tmf():
    assert unit_degrees("TMF13") == {"a3": 6, "a1^3-27a3": 6, "Delta": 24}


def test_irreducible_linear():
    from artifact.algebra import expand_named

    # a1^3 - 27 a3 read as c1 * a3 + c0 with c1 = -27, c0 = a1^3
    B = expand_named("Delta").algebra
    assert irreducible_linear([B.one() * -27, B.monomial(a1=3)])
    assert not irreducible_linear([B.one() * 4, B.monomial(a1=3) * 2])
    assert not irreducible_linear([B.monomial(a1=1), B.monomial(a1=2)])


def test_zero_column_without_tail():
    col = picard_ss_zero_column(FGAbelianGroup.cyclic(6, ground="Z"), FGAbelianGroup.cyclic(2, ground="Z"), [])
    assert [r["order"] for r in col.rows if r["fate"] == "survives"] == [6, 2]
    assert assemble_order_bound(col) == 12


def test_zero_column_tmf():
    rows = picard_pipeline("TMF13")["column"]["rows"]
    survivors = [(r["s"], r.get("class")) for r in rows if r["fate"] == "survives"]
    assert survivors == [(0, None), (1, None), (3, "b3"), (7, "b7")]
    assert all(r["fate"].startswith("dies-by") for r in rows if r.get("class", "").startswith("gamma"))


@pytest.mark.parametrize("target, order", [("TMF13", 48), ("a1inv", 8), ("a3inv", 48), ("a1a3inv", 8)])
def test_pipeline_orders(target, order):
    r = picard_pipeline(target)
    assert r["ok"]
    assert r["order"] == order
    assert r["smallest_period"] == order


def test_tmf_with_compactification():
    r = picard_pipeline("Tmf13")
    assert r["ok"]
    assert r["group"] == {"rank": 1, "factors": [8]}
    assert r["pretty"] == "Z + Z/8"
    assert set(r["assumptions"]) == set(ASSUMPTIONS)


def test_period_search():
    assert smallest_period("a1inv") == 8


def test_targets():
    assert set(TARGETS) == {"TMF13", "Tmf13", "a1inv", "a3inv", "a1a3inv"}
    with pytest.raises(ValueError):
        picard_pipeline("KO")


def test_mv_assemble_failure_is_reported():
    units = FGAbelianGroup(2, (2,), ("3", "z", "-1"), ground="Z")
    r = mv_assemble(units, {"z": Degree(3, 3)}, FGAbelianGroup.cyclic(6, ground="Z"))
    assert not r["ok"] or r["group"].pretty() != "Z + Z/8"
