"""Algebraic shadows of Anderson self-duality for Tmf_1(3).

Three finitary checks: the Serre pairing between H^0(O(k)) and H^1(O(-4-k))
on the weighted projective line P(1,3), the cell bijection behind
``I Tmf_1(3) = Sigma^{5+2rho} Tmf_1(3)``, and the universal coefficient
sequence on integer homotopy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .abelian import determinant, strip_three
from .grading import Degree, RHO
from .slice import SliceCell, pi_compactified

__all__ = [
    "PairingMatrix",
    "serre_pairing",
    "certify_perfect",
    "dual_cell_check",
    "uct_check",
    "HZ_STAR_SHIFT",
    "ANDERSON_SHIFT",
]

ANDERSON_SHIFT = Degree(7, 2)  # 5 + 2 rho
HZ_STAR_SHIFT = Degree(4, 0) - RHO * 2  # HZ* = S^{4 - 2 rho} ^ HZ


@dataclass(frozen=True)
class PairingMatrix:
    k: int
    rows: tuple[tuple[int, int], ...]
    cols: tuple[tuple[int, int], ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "rows": [f"a1^{i} a3^{j}" for i, j in self.rows],
            "cols": [f"1/(a1^{i} a3^{j})" for i, j in self.cols],
            "entries": [list(r) for r in self.entries],
        }


def _h0_basis(k: int) -> list[tuple[int, int]]:
    return sorted((k - 3 * j, j) for j in range(k // 3 + 1)) if k >= 0 else []


def _h1_basis(k: int) -> list[tuple[int, int]]:
    # 1/(a1^i a3^j) with i, j >= 1 and i + 3j = k + 4
    n = k + 4
    return sorted((n - 3 * j, j) for j in range(1, n // 3 + 1) if n - 3 * j >= 1)


def serre_pairing(k: int) -> PairingMatrix:
    """Coefficient of ``D = 1/(a1 a3)`` in the products of the two bases.

    >>> serre_pairing(0).entries
    ((1,),)
    >>> serre_pairing(3).entries
    ((1, 0), (0, 1))
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    rows, cols = _h0_basis(k), _h1_basis(k)
    entries = tuple(
        tuple(1 if (i + 1, j + 1) == (ic, jc) else 0 for ic, jc in cols) for i, j in rows
    )
    return PairingMatrix(k, tuple(rows), tuple(cols), entries)


def certify_perfect(m: PairingMatrix | Sequence[Sequence[int]]) -> bool:
    """Whether the matrix is invertible over Z[1/3].

    >>> certify_perfect([[0]])
    False
    """
    entries = m.entries if isinstance(m, PairingMatrix) else tuple(tuple(r) for r in m)
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise ValueError(f"pairing matrix is not square: {n} rows, row lengths {[len(r) for r in entries]}")
    if n == 0:
        return True
    return strip_three(abs(determinant([list(r) for r in entries]))) == 1


def dual_cell(cell: SliceCell, shift: Degree = ANDERSON_SHIFT) -> Degree:
    """Dimension of the dual of a cell in the HZ form: ``-V + (4 - 2 rho) - shift``."""
    return -cell.dimension + HZ_STAR_SHIFT - shift


def dual_cell_check(cells: Iterable[SliceCell], shift: Degree = ANDERSON_SHIFT) -> dict:
    """Match every cell with the cell its Anderson dual lands on.

    A positive cell of dimension ``|P|`` dualizes to ``S^{-|P|-2rho-5} ^ HZ*``,
    which is ``S^{-|P|-4rho-1} ^ HZ``, the negative cell of the same
    monomial.  Cells whose partner falls outside the window are reported
    separately from genuine mismatches.
    """
    cells = list(cells)
    if not cells:
        return {"pairs": [], "unmatched": [], "boundary": [], "involution": True, "ok": True}
    by_key = {(c.kind, c.monomial): c for c in cells}
    indices = [c.slice_index for c in cells]
    lo, hi = min(indices), max(indices)
    pairs, unmatched, boundary = [], [], []
    involution = True
    for c in cells:
        target = dual_cell(c, shift)
        other = "negative" if c.kind == "positive" else "positive"
        partner = by_key.get((other, c.monomial))
        if partner is None:
            expected = SliceCell(other, c.monomial)
            (boundary if not lo <= expected.slice_index <= hi else unmatched).append(c.to_json())
            continue
        if partner.dimension != target:
            unmatched.append(c.to_json())
            continue
        if dual_cell(partner, shift) != c.dimension:
            involution = False
        if c.kind == "positive":
            star = -c.dimension - shift
            pairs.append(
                {
                    "positive": c.dimension.pretty(),
                    "negative_hz_star": star.pretty(),
                    "negative_hz": partner.dimension.pretty(),
                    "monomial": list(c.monomial),
                }
            )
    return {
        "pairs": pairs,
        "unmatched": unmatched,
        "boundary": boundary,
        "involution": involution,
        "ok": not unmatched and involution,
    }


def uct_check(stems: Iterable[int], shift: int = 9) -> dict:
    """Underlying universal coefficient check ``pi_{-n} I = Hom(pi_n) + Ext(pi_{n-1})``.

    With ``I = Sigma^9`` on underlying spectra and all groups free this
    says ``rank pi_n = rank pi_{-9-n}``.
    """
    rows = []
    for n in stems:
        hom = pi_compactified(n).free_rank
        ext = len(pi_compactified(n - 1).invariant_factors)
        dual = pi_compactified(-shift - n)
        rows.append(
            {
                "n": n,
                "hom": hom,
                "ext": ext,
                "dual_rank": dual.free_rank,
                "ok": dual.free_rank == hom and len(dual.invariant_factors) == ext,
            }
        )
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}
