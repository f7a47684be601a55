import pytest

from artifact.abelian import FGAbelianGroup
from artifact.mackey import (
    bredon_cohomology_sigma_sphere,
    bredon_homology_sigma_sphere,
    cellular_cohomology_sigma_sphere,
    cellular_homology_sigma_sphere,
    direct_sum,
    homotopy_near_rho,
    hz_homotopy,
    named_mackey,
    zero_mackey,
)


@pytest.mark.parametrize("name", ["Z", "Zstar", "Zminus", "G"])
def test_named_functors_satisfy_axioms(name):
    assert named_mackey(name).satisfies_axioms()


def test_direct_sum_is_isotypic():
    m = direct_sum(named_mackey("Z"), zero_mackey(), named_mackey("Z"))
    assert m.satisfies_axioms()
    assert m.fixed.pretty() == "Z[1/3]^2"
    with pytest.raises(ValueError):
        direct_sum(named_mackey("Z"), named_mackey("G"))


@pytest.mark.parametrize("k", range(0, 17))
def test_bredon_formula_matches_cellular_chains(k):
    for s in range(0, 17):
        assert bredon_homology_sigma_sphere(k, s) == cellular_homology_sigma_sphere(k, s)
        assert bredon_cohomology_sigma_sphere(k, s) == cellular_cohomology_sigma_sphere(k, s)


def test_hz_top_cells():
    assert hz_homotopy(0, 0) == named_mackey("Z")
    assert hz_homotopy(-2, 2) == named_mackey("Zstar")
    assert hz_homotopy(1, -1) == named_mackey("Zminus")
    odd = hz_homotopy(-3, 3)
    assert odd.fixed.invariant_factors == (2,) and odd.underlying.free_rank == 1
    assert odd.satisfies_axioms()


def test_hz_off_top():
    g = named_mackey("G", FGAbelianGroup.free(1))
    # homology of S^{k sigma} below the top cell: Z/2 in even degrees
    assert [x for x in range(-1, 6) if hz_homotopy(x, -5) == g] == [0, 2, 4]
    # cohomology side: Z/2 in degrees -3, -5, ... strictly above the bottom
    assert hz_homotopy(-3, 5) == g
    assert hz_homotopy(-4, 5).is_zero
    assert hz_homotopy(3, -1).is_zero
    for x in range(-10, 10):
        for y in range(-10, 10):
            assert hz_homotopy(x, y).satisfies_axioms()


def test_near_rho_table():
    coeffs = {0: FGAbelianGroup.free(1), 2: FGAbelianGroup.free(1)}
    assert homotopy_near_rho(coeffs, 0, 0) == named_mackey("Z")
    assert homotopy_near_rho(coeffs, 0, 1).fixed.invariant_factors == (2,)
    assert homotopy_near_rho(coeffs, 2, -2) == named_mackey("Zminus")
    assert homotopy_near_rho(coeffs, 5, -1) == zero_mackey()
    with pytest.raises(ValueError):
        homotopy_near_rho(coeffs, 0, 2)
    with pytest.raises(ValueError):
        homotopy_near_rho({0: FGAbelianGroup.cyclic(2)}, 0, 0)
