"""Independent brute-force oracles for the spectral sequence engine.

Nothing here uses the incremental lattice bookkeeping of ``sseq``.

* E4 of tmf_1(3) by dense linear algebra.  A d3 always lands in positive
  filtration, where E2 is an F2-vector space, so E4 is an F2-rank count in
  positive filtration and free of the E2 rank in filtration 0.
* The closed form of E_infinity for tmf_1(3).
* Invariant factors from determinantal divisors (gcd of k x k minors).
"""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Sequence

from .algebra import MonomialAlgebra
from .sseq import Differential

__all__ = [
    "f2_rank",
    "e4_oracle",
    "einf_closed_form",
    "determinantal_invariants",
    "dense_det",
]


def f2_rank(rows: Sequence[int]) -> int:
    """Rank over F2 of row bitmasks."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _matrix(A: MonomialAlgebra, d: Differential, src: tuple, tgt: tuple) -> list[int]:
    sb = A.basis(*src)
    tb = {v: i for i, v in enumerate(A.basis(*tgt))}
    rows = []
    for v in sb:
        mask = 0
        for w, c in d.apply_vec(A, v).items():
            if c % 2:
                mask |= 1 << tb[w]
        rows.append(mask)
    return rows


def e4_oracle(A: MonomialAlgebra, d3: Differential, key: tuple[int, int, int]) -> tuple[int, int]:
    """``(free rank, number of Z/2)`` of E4 at ``key``."""
    a, b, s = key
    n = len(A.basis(a, b, s))
    if s == 0:
        return n, 0
    out = f2_rank(_matrix(A, d3, (a, b, s), (a - 1, b, s + 3)))
    inc = f2_rank(_matrix(A, d3, (a + 1, b, s - 3), (a, b, s))) if s >= 3 else 0
    return 0, n - out - inc


def _solutions(a: int, b: int, f: int):
    # a_sigma^f u^e a1^g a3^h: a = 2e + g + 3h, b = -f - 2e + g + 3h
    if (a + b + f) % 2:
        return
    n = (a + b + f) // 2  # g + 3h
    if n < 0 or (a - n) % 2:
        return
    e = (a - n) // 2
    for h in range(n // 3 + 1):
        yield e, n - 3 * h, h


def einf_closed_form(key: tuple[int, int, int]) -> tuple[int, int, list[str]]:
    """E_infinity of tmf_1(3) at ``key``: free rank, Z/2 count and, in
    filtration 0, whether each generator is the monomial or twice it."""
    a, b, s = key
    free, tors, gens = 0, 0, []
    for e, g, h in _solutions(a, b, s):
        if s == 0:
            free += 1
            plain = e % 4 == 0 or (e % 4 == 2 and g >= 1)
            gens.append("1" if plain else "2")
            continue
        if e % 2:
            continue
        if (g >= 1 and s <= 2) or (g == 0 and e % 4 == 0 and (s <= 6 or h == 0)):
            tors += 1
    return free, tors, sorted(gens)


def dense_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by cofactor expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * dense_det(minor)
    return total


def determinantal_invariants(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_k / d_{k-1}`` with d_k the gcd of k x k minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    prev, out = 1, []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, dense_det([[m[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out
