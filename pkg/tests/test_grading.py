import pytest
from hypothesis import given, strategies as st

from artifact.grading import (
    BiDegree,
    Degree,
    ONE,
    RHO,
    SIGMA,
    ZERO,
    differential_target,
    regular_multiple,
    tri_to_bidegree,
)

degrees = st.builds(Degree, st.integers(-50, 50), st.integers(-50, 50))


@given(degrees, degrees, degrees)
def test_group_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + ZERO == x
    assert x - x == ZERO
    assert -(-x) == x


@given(degrees, st.integers(-6, 6))
def test_scalar_and_dimension(x, k):
    assert (k * x).underlying_dimension == k * x.underlying_dimension
    assert x * k == k * x


@given(degrees)
def test_json_round_trip(x):
    assert Degree.from_json(x.to_json()) == x


def test_from_json_rejects_triples():
    with pytest.raises(ValueError):
        Degree.from_json([1, 2, 3])


def test_rho_is_one_plus_sigma():
    assert RHO == ONE + SIGMA
    assert regular_multiple(3) == Degree(3, 3)
    assert regular_multiple(-2).underlying_dimension == -4


@pytest.mark.parametrize(
    "deg, text",
    [
        (Degree(3, 0), "3"),
        (Degree(1, 1), "rho"),
        (Degree(4, 4), "4rho"),
        (Degree(0, 1), "sigma"),
        (Degree(0, -1), "-sigma"),
        (Degree(-5, -4), "-5-4sigma"),
        (Degree(2, 3), "2+3sigma"),
    ],
)
def test_pretty(deg, text):
    assert deg.pretty() == text


def test_differential_target_moves_left_and_up():
    src = BiDegree(Degree(6, -6), 0)
    tgt = differential_target(src, 3)
    assert tgt == BiDegree(Degree(5, -6), 3)
    assert tgt.stem == src.stem - 1


def test_differential_target_needs_r_at_least_two():
    with pytest.raises(ValueError):
        differential_target(BiDegree(ZERO, 0), 1)


def test_trigrading():
    b = tri_to_bidegree(2, 1, 5)
    assert b.degree == Degree(3, 2)
    assert b.key() == (3, 2, 1)
