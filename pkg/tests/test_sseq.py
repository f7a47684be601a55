import pytest
from hypothesis import given, settings, strategies as st

from artifact.algebra import Monomial
from artifact.grading import Degree
from artifact.sseq import (
    Differential,
    InconsistentDifferential,
    SSWindow,
    abutment,
    e2_page,
    leibniz_extend,
    run_to_stable,
    turn_page,
)
from artifact.tmf13 import SCENARIOS, build_scenario

SC = {name: build_scenario(name) for name in SCENARIOS}


@st.composite
def elements(draw, name):
    sc = SC[name]
    lows = sc.lower_bounds()
    out = sc.algebra.zero()
    for _ in range(draw(st.integers(1, 3))):
        exps = {}
        for g in sc.algebra.generators:
            lo = lows.get(g.name, -8 if g.invertible else 0)
            exps[g.name] = draw(st.integers(lo, 8))
        out = out + sc.algebra.monomial(Monomial.of(exps)) * draw(st.integers(-3, 3))
    return out


@pytest.mark.parametrize("name", SCENARIOS)
def test_d_squared_is_zero(name):
    @settings(max_examples=200)
    @given(elements(name))
    def check(x):
        for d in SC[name].differentials:
            assert leibniz_extend(d, leibniz_extend(d, x)).is_zero()

    check()


@pytest.mark.parametrize("name", ["tmf13", "TMF13"])
def test_leibniz_rule(name):
    @settings(max_examples=150)
    @given(elements(name), elements(name))
    def check(x, y):
        # d7 is only defined on u^2 (that is, on E7), so the plain rule is a d3 statement
        d = SC[name].differentials[0]
        lhs = leibniz_extend(d, x * y)
        rhs = leibniz_extend(d, x) * y + x * leibniz_extend(d, y)
        assert lhs == rhs

    check()


def test_d3_and_d7_values():
    sc = SC["tmf13"]
    d3, d7 = sc.differentials
    assert leibniz_extend(d3, sc.el(u_2sigma=1)) == sc.el(a_sigma=3, a1bar=1)
    assert leibniz_extend(d3, sc.el(u_2sigma=2)).is_zero()
    assert leibniz_extend(d7, sc.el(u_2sigma=2)) == sc.el(a_sigma=7, a3bar=1)
    assert leibniz_extend(d7, sc.el(u_2sigma=4)).is_zero()


def test_differential_validation():
    A = SC["tmf13"].algebra
    with pytest.raises(ValueError):
        Differential(1)
    bad = Differential(3, {"u_2sigma": A.monomial(a1bar=1)})
    with pytest.raises(ValueError):
        run_to_stable(A, [bad], SSWindow.square(6, 12, SC["tmf13"].exponents))
    assert issubclass(InconsistentDifferential, ValueError)


def test_missing_differential_is_reported_not_guessed():
    sc = SC["tmf13"]
    res = run_to_stable(sc.algebra, [sc.differentials[0]], sc.window(8, 16))
    assert res.unresolved
    assert min(u["r"] for u in res.unresolved) == 7
    assert not res.stable


def test_stable_run_on_small_window():
    sc = SC["tmf13"]
    res = run_to_stable(sc.algebra, list(sc.differentials), sc.window(10, 20))
    assert res.stable
    assert res.stabilization_page == 8
    assert res.nonzero_differentials == [3, 7]


def test_fate(small_tmf):
    sc, _, page = small_tmf
    assert page.fate(sc.el(u_2sigma=1)) == {"status": "supports", "r": 3, "target": "a1bar*a_sigma^3"}
    assert page.fate(sc.el(u_2sigma=2))["r"] == 7
    assert page.fate(sc.el(u_2sigma=4)) == {"status": "permanent"}
    assert page.fate(sc.el(a_sigma=3, a1bar=1)) == {"status": "boundary", "page": 4}
    assert page.fate(sc.el(a_sigma=7, a3bar=1)) == {"status": "boundary", "page": 8}


def test_pages_and_groups(small_tmf):
    sc, w, page = small_tmf
    rs = [p.r for p in page.chain()]
    assert rs == [2, 3, 4, 5, 6, 7, 8]
    e2 = page.chain()[0]
    assert e2.group((1, 0, 1)).pretty() == "Z/2"
    assert e2.group((0, 0, 0)).pretty() == "Z[1/3]"
    # u^2 survives only as 2u^2
    assert page.group((4, -4, 0)).pretty() == "Z[1/3]"
    assert [c.label for c in page.classes((4, -4, 0))] == ["2*u_2sigma^2"]
    assert [c.label for c in page.classes((8, -8, 0))] == ["u_2sigma^4"]
    assert page.chain()[2].supports_differential((2, -2, 0))


def test_abutment(small_tmf):
    _, _, page = small_tmf
    ab = abutment(page, Degree(0, 0))
    assert ab.assembled.pretty() == "Z[1/3]"
    assert ab.flag is None
    eta = abutment(page, Degree(1, 0))
    assert eta.assembled.pretty() == "Z/2"


def test_turn_page_requires_matching_r():
    sc = SC["tmf13"]
    e2 = e2_page(sc.algebra, sc.window(4, 8))
    with pytest.raises(ValueError):
        turn_page(e2, sc.differentials[0])


def test_window_json_round_trip():
    w = SSWindow((-3, 4), (-5, 6), 9)
    assert SSWindow.from_json(w.to_json()) == w
    assert w.contains((4, 6, 9)) and not w.contains((5, 0, 0))
    assert sum(1 for _ in w.keys()) == 8 * 12 * 10
