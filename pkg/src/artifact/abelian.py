"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works on plain Python integers so that no overflow or
rounding can creep into the homology computations.

>>> snf_diagonal([[8, -8], [3, 3]])
[1, 48]
>>> FGAbelianGroup.from_relations([[8, -8]], 2, ground="Z")
FGAbelianGroup(free_rank=1, invariant_factors=(8,), ground='Z')
>>> FGAbelianGroup.from_orders(0, [2, 3])
FGAbelianGroup(free_rank=0, invariant_factors=(2,), ground='Z[1/3]')
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]

__all__ = [
    "FGAbelianGroup",
    "smith_normal_form",
    "snf_diagonal",
    "hermite_rows",
    "left_kernel",
    "coordinates_in",
    "lattice_quotient",
    "identity",
    "matmul",
    "determinant",
    "strip_three",
]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def strip_three(n: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    while n % 3 == 0:
        n //= 3
    return n


def _egcd(p: int, q: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x p + y q = g = gcd(p, q) > 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while q:
        k, r = divmod(p, q)
        p, q = q, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if p < 0:
        return -p, -x0, -y0
    return p, x0, y0


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form over the integers.

    Parameters
    ----------
    m : sequence of rows
        integer matrix of shape (rows, cols)

    Returns
    -------
    diag : list of int
        the nonzero and zero diagonal entries d_1 | d_2 | ..., length min(rows, cols)
    left, right : unimodular matrices with ``left @ m @ right == D``
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row_dst += k * row_src
        if k:
            ra, rs = a[dst], a[src]
            for c in range(cols):
                ra[c] += k * rs[c]
            la, ls = left[dst], left[src]
            for c in range(rows):
                la[c] += k * ls[c]

    def add_col(dst: int, src: int, k: int) -> None:
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in right:
                r[dst] += k * r[src]

    def mix_rows(i: int, j: int, x: int, y: int, u: int, v: int) -> None:
        # (row_i, row_j) <- (x row_i + y row_j, u row_i + v row_j), det 1
        for mat in (a, left):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[j] = [u * p + v * q for p, q in zip(ri, rj)]

    def mix_cols(i: int, j: int, x: int, y: int, u: int, v: int) -> None:
        for mat in (a, right):
            for r in mat:
                p, q = r[i], r[j]
                r[i], r[j] = x * p + y * q, u * p + v * q

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # Bezout steps replace the pivot by a gcd, so it only shrinks
            for i in range(t + 1, rows):
                if a[i][t]:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        add_row(i, t, -(q // p))
                        continue
                    g, x, y = _egcd(p, q)
                    mix_rows(t, i, x, y, -q // g, p // g)
            for j in range(t + 1, cols):
                if a[t][j]:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        add_col(j, t, -(q // p))
                        continue
                    g, x, y = _egcd(p, q)
                    mix_cols(t, j, x, y, -q // g, p // g)
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            bad = None
            for i in range(t + 1, rows):
                if any(a[i][j] % a[t][t] for j in range(t + 1, cols)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, left, right


def snf_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    return smith_normal_form(m)[0]


def hermite_rows(gens: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``gens``.

    Rows come back in echelon order with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    rows = [list(map(int, g)) for g in gens if any(g)]
    out: Matrix = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r2 = [x - q * y for x, y in zip(r, p)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        for r in out:
            if r[col]:
                q = r[col] // p[col]
                if q:
                    for c in range(ncols):
                        r[c] -= q * p[c]
        out.append(p)
        rows = rest
        col += 1
    return out


def left_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """A basis of ``{y : y m = 0}`` for an integer matrix given as rows."""
    k = len(m)
    if k == 0:
        return []
    n = len(m[0])
    aug = [list(m[i]) + [int(i == j) for j in range(k)] for i in range(k)]
    h = hermite_rows(aug, n + k)
    return [r[n:] for r in h if not any(r[:n])]


def coordinates_in(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Coordinates of ``v`` in a Hermite basis; raises if ``v`` is outside the lattice."""
    v = list(v)
    coeffs = []
    for row in basis:
        p = next(i for i, x in enumerate(row) if x)
        q, rem = divmod(v[p], row[p])
        if rem:
            raise ValueError("vector not in lattice")
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        raise ValueError("vector not in lattice")
    return coeffs


def lattice_quotient(z_basis: Sequence[Sequence[int]], b_gens: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Free rank and invariant factors (over Z) of ``span(z_basis) / span(b_gens)``.

    ``z_basis`` must be in Hermite form and contain ``b_gens``.
    """
    k = len(z_basis)
    if k == 0:
        return 0, []
    rel = [coordinates_in(z_basis, b) for b in b_gens]
    if not rel:
        return k, []
    diag = snf_diagonal(rel)
    nonzero = [d for d in diag if d]
    return k - len(nonzero), [d for d in nonzero if d != 1]


def _invariant_factors(orders: Iterable[int]) -> list[int]:
    orders = [abs(o) for o in orders if abs(o) > 1]
    if not orders:
        return []
    diag = snf_diagonal([[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)])
    return [d for d in diag if d > 1]


@dataclass(frozen=True)
class FGAbelianGroup:
    """Invariant-factor form ``Z^r + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``.

    Over the ground ring Z[1/3] (the default) every factor is made coprime
    to 3; a factor that is a power of 3 is a unit and disappears.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()
    generator_labels: tuple[str, ...] = field(default=(), compare=False)
    ground: str = "Z[1/3]"

    def __post_init__(self) -> None:
        if self.ground not in ("Z", "Z[1/3]"):
            raise ValueError(f"unknown ground ring {self.ground!r}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        facs = list(self.invariant_factors)
        if self.ground == "Z[1/3]":
            facs = [strip_three(f) for f in facs]
        facs = _invariant_factors(facs)
        object.__setattr__(self, "invariant_factors", tuple(facs))
        object.__setattr__(self, "generator_labels", tuple(self.generator_labels))

    def __repr__(self) -> str:
        return (
            f"FGAbelianGroup(free_rank={self.free_rank}, "
            f"invariant_factors={self.invariant_factors}, ground={self.ground!r})"
        )

    @classmethod
    def zero(cls, ground: str = "Z[1/3]") -> "FGAbelianGroup":
        return cls(0, (), ground=ground)

    @classmethod
    def free(cls, rank: int = 1, labels: Sequence[str] = (), ground: str = "Z[1/3]") -> "FGAbelianGroup":
        return cls(rank, (), tuple(labels), ground)

    @classmethod
    def cyclic(cls, n: int, labels: Sequence[str] = (), ground: str = "Z[1/3]") -> "FGAbelianGroup":
        if n == 0:
            return cls(1, (), tuple(labels), ground)
        return cls(0, (abs(n),), tuple(labels), ground)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int], labels: Sequence[str] = (), ground: str = "Z[1/3]") -> "FGAbelianGroup":
        return cls(free_rank, tuple(orders), tuple(labels), ground)

    @classmethod
    def from_relations(
        cls,
        relations: Sequence[Sequence[int]],
        ngens: int,
        labels: Sequence[str] = (),
        ground: str = "Z[1/3]",
    ) -> "FGAbelianGroup":
        """Cokernel of the relation matrix (rows are relations among ``ngens`` generators)."""
        rel = [list(r) for r in relations if any(r)]
        if not rel:
            return cls(ngens, (), tuple(labels), ground)
        diag = snf_diagonal(rel)
        nonzero = [d for d in diag if d]
        return cls(ngens - len(nonzero), tuple(nonzero), tuple(labels), ground)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def two_rank(self) -> int:
        """Number of cyclic summands of even order."""
        return sum(1 for f in self.invariant_factors if f % 2 == 0)

    def has_two_torsion(self) -> bool:
        return self.two_rank > 0

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        if self.ground != other.ground:
            raise ValueError("cannot add groups over different ground rings")
        return FGAbelianGroup(
            self.free_rank + other.free_rank,
            self.invariant_factors + other.invariant_factors,
            self.generator_labels + other.generator_labels,
            self.ground,
        )

    def tensor_mod2(self) -> "FGAbelianGroup":
        """``self ⊗ Z/2``."""
        n = self.free_rank + self.two_rank
        return FGAbelianGroup(0, (2,) * n, self.generator_labels, self.ground)

    def two_torsion_subgroup(self) -> "FGAbelianGroup":
        """``Hom(Z/2, self)``, the elements killed by 2."""
        return FGAbelianGroup(0, (2,) * self.two_rank, (), self.ground)

    def relabel(self, labels: Sequence[str]) -> "FGAbelianGroup":
        return FGAbelianGroup(self.free_rank, self.invariant_factors, tuple(labels), self.ground)

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "factors": list(self.invariant_factors)}

    def pretty(self) -> str:
        unit = "Z[1/3]" if self.ground == "Z[1/3]" else "Z"
        parts = []
        if self.free_rank == 1:
            parts.append(unit)
        elif self.free_rank > 1:
            parts.append(f"{unit}^{self.free_rank}")
        for f in self.invariant_factors:
            parts.append(f"Z/{f}")
        return " + ".join(parts) if parts else "0"
