import pytest
from hypothesis import given, settings, strategies as st

from artifact.abelian import (
    FGAbelianGroup,
    determinant,
    hermite_rows,
    lattice_quotient,
    matmul,
    smith_normal_form,
    strip_three,
)
from artifact.oracles import determinantal_invariants, dense_det


@st.composite
def int_matrices(draw, max_dim=8, lo=-9, hi=9):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]


def _check_snf(m):
    diag, left, right = smith_normal_form(m)
    r, c = len(m), len(m[0])
    d = [[diag[i] if i == j else 0 for j in range(c)] for i in range(r)]
    assert matmul(matmul(left, m), right) == d
    assert abs(determinant(left)) == 1
    assert abs(determinant(right)) == 1
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x == 0 for x in diag[len(nz):])
    return nz


@settings(max_examples=1000)
@given(int_matrices())
def test_snf_certificate(m):
    _check_snf(m)


@settings(max_examples=300)
@given(int_matrices(max_dim=4))
def test_snf_matches_determinantal_divisors(m):
    assert _check_snf(m) == determinantal_invariants(m)


@given(int_matrices(max_dim=5))
def test_bareiss_matches_cofactor(m):
    n = min(len(m), len(m[0]))
    sq = [row[:n] for row in m[:n]]
    assert determinant(sq) == dense_det(sq)


def test_snf_regressions():
    # inputs that used to loop: a negative pivot dividing an entry, and coefficient blowup
    m = [[6, 9, -4, -3, -8, -4], [-4, 1, 7, -1, -6, 5], [-4, -9, 6, 4, 9, 7],
         [0, 2, 3, -1, -5, 8], [-9, 5, -7, 1, -8, 8]]
    _check_snf(m)
    assert _check_snf([[-2, 4], [0, 6]]) == [2, 6]
    assert _check_snf([[0, 0], [0, 0]]) == []


def test_strip_three():
    assert strip_three(54) == 2
    assert strip_three(9) == 1
    assert strip_three(-12) == 4


def test_ground_ring_inverts_three():
    assert FGAbelianGroup.cyclic(3).is_zero
    assert FGAbelianGroup.cyclic(6).invariant_factors == (2,)
    assert FGAbelianGroup.cyclic(6, ground="Z").invariant_factors == (6,)


def test_invariant_factor_normal_form():
    g = FGAbelianGroup.from_orders(1, [4, 2, 8], ground="Z")
    assert g.invariant_factors == (2, 4, 8)
    h = FGAbelianGroup.from_orders(0, [2, 5], ground="Z")
    assert h.invariant_factors == (10,)
    assert h.order() == 10
    assert g.order() is None


def test_from_relations():
    g = FGAbelianGroup.from_relations([[8, -8], [3, 3]], 2, ground="Z")
    assert g.pretty() == "Z/48"
    assert FGAbelianGroup.from_relations([], 2).free_rank == 2


def test_two_rank_and_tensor():
    g = FGAbelianGroup.from_orders(2, [2, 4, 5], ground="Z")
    assert g.two_rank == 2
    assert g.tensor_mod2().invariant_factors == (2, 2, 2, 2)
    assert g.two_torsion_subgroup().invariant_factors == (2, 2)


def test_sum_requires_same_ground():
    with pytest.raises(ValueError):
        FGAbelianGroup.free(1) + FGAbelianGroup.free(1, ground="Z")


def test_pretty_and_json():
    g = FGAbelianGroup.from_orders(1, [8], ground="Z")
    assert g.pretty() == "Z + Z/8"
    assert g.to_json() == {"rank": 1, "factors": [8]}
    assert FGAbelianGroup.zero().pretty() == "0"
    assert FGAbelianGroup.free(2).pretty() == "Z[1/3]^2"


def test_lattice_quotient_and_hermite():
    z = [[1, 0], [0, 1]]
    assert lattice_quotient(z, [[2, 0], [0, 4]]) == (0, [2, 4])
    rows = hermite_rows([[4, 6], [2, 4]], 2)
    assert all(r[0] >= 0 for r in rows)
