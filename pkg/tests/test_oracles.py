"""Engine output against the brute-force oracles on |a|, |b| <= 12, s <= 24."""

import pytest

from artifact.oracles import (
    dense_det,
    determinantal_invariants,
    e4_oracle,
    einf_closed_form,
    f2_rank,
)


def test_f2_rank():
    assert f2_rank([0b11, 0b01, 0b10]) == 2
    assert f2_rank([]) == 0


def test_dense_det():
    assert dense_det([[2, 1], [1, 1]]) == 1
    assert dense_det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_determinantal_invariants():
    assert determinantal_invariants([[8, -8], [3, 3]]) == [1, 48]
    assert determinantal_invariants([[2, 0], [0, 4]]) == [2, 4]
    assert determinantal_invariants([[0, 0]]) == []


@pytest.fixture(scope="module")
def pages(small_tmf):
    sc, w, page = small_tmf
    return sc, w, {p.r: p for p in page.chain()}


def test_e4_against_dense_f2_linear_algebra(pages):
    sc, w, by_r = pages
    e4 = by_r[4]
    bad = []
    for key in w.keys():
        g = e4.group(key)
        if (g.free_rank, len(g.invariant_factors)) != e4_oracle(sc.algebra, sc.differentials[0], key):
            bad.append(key)
    assert not bad


def test_einf_against_closed_form(pages):
    _, w, by_r = pages
    e8 = by_r[8]
    bad = []
    for key in w.keys():
        g = e8.group(key)
        free, tors, gens = einf_closed_form(key)
        if (g.free_rank, len(g.invariant_factors)) != (free, tors):
            bad.append(key)
        elif key[2] == 0 and free:
            labels = sorted("2" if c.label.startswith("2*") else "1" for c in e8.classes(key))
            if labels != gens:
                bad.append(key)
    assert not bad
