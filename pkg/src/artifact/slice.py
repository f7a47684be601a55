"""Slice cells and the slice spectral sequence E2 chart of Tmf_1(3).

Positive cells are ``S^{n rho} ^ HZ`` for monomials ``a1bar^g a3bar^h`` with
``n = g + 3h``.  Negative cells are ``S^{-d rho - 1} ^ HZ`` with ``d = n + 4``.
All groups are over Z[1/3].

Chart coordinates follow the Adams convention: a class of ``pi_m`` of the
slice with index t sits at ``(stem, s) = (m, t - m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .abelian import FGAbelianGroup
from .grading import Degree, RHO
from .mackey import MackeyFunctor, direct_sum, homotopy_near_rho, hz_homotopy, named_mackey, zero_mackey

__all__ = [
    "SliceCell",
    "slice_cells",
    "slice_e2",
    "slice_e2_mackey",
    "validate_index_map",
    "IndexMapError",
    "forced_negative_differentials",
    "pi_compactified",
    "underlying_euler_check",
    "band_check",
]


class IndexMapError(RuntimeError):
    """The negative-cell index map disagrees with a known value."""


@dataclass(frozen=True, order=True)
class SliceCell:
    """``S^V ^ HZ`` for one monomial.

    A positive cell stores ``(g, h)`` for a1bar^g a3bar^h; a negative cell
    stores ``(g, h)`` for 1/(a1bar^(g+1) a3bar^(h+1)).
    """

    kind: str
    monomial: tuple[int, int]
    coefficient: str = "Z"

    @property
    def weight(self) -> int:
        g, h = self.monomial
        return g + 3 * h

    @property
    def dimension(self) -> Degree:
        n = self.weight
        if self.kind == "positive":
            return RHO * n
        return RHO * (-n - 4) - Degree(1, 0)

    @property
    def slice_index(self) -> int:
        n = self.weight
        return 2 * n if self.kind == "positive" else -2 * n - 9

    def homotopy(self, v: Degree) -> MackeyFunctor:
        """``pi_V`` of the cell, i.e. ``pi_{V - dim} HZ``."""
        w = v - self.dimension
        return hz_homotopy(w.a, w.b)

    def label(self) -> str:
        g, h = self.monomial
        if self.kind == "negative":
            g, h = g + 1, h + 1
        mono = "*".join(
            p if e == 1 else f"{p}^{e}" for p, e in (("a1bar", g), ("a3bar", h)) if e
        ) or "1"
        return mono if self.kind == "positive" else f"1/({mono})"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label(),
            "monomial": list(self.monomial),
            "dimension": self.dimension.to_json(),
            "slice_index": self.slice_index,
            "coefficient": self.coefficient,
        }


def _monomials(n: int) -> list[tuple[int, int]]:
    return [(n - 3 * h, h) for h in range(n // 3 + 1)] if n >= 0 else []


def slice_cells(lo: int, hi: int) -> list[SliceCell]:
    """All slice cells with slice index in ``[lo, hi]``.

    >>> [c.monomial for c in slice_cells(6, 6)]
    [(3, 0), (0, 1)]
    >>> [c.dimension.pretty() for c in slice_cells(-9, -9)]
    ['-5-4sigma']
    >>> slice_cells(1, 1)
    []
    """
    out = []
    for t in range(lo, hi + 1):
        if t >= 0 and t % 2 == 0:
            out += [SliceCell("positive", m) for m in _monomials(t // 2)]
        elif t <= -9 and t % 2:
            out += [SliceCell("negative", m) for m in _monomials((-t - 9) // 2)]
    return out


def _stem_group(cell: SliceCell, m: int) -> FGAbelianGroup:
    return cell.homotopy(Degree(m, 0)).fixed


@lru_cache(maxsize=1)
def validate_index_map() -> dict:
    """Check the negative-cell index map against pi_{-9} and pi_{-5-2 rho}."""
    # pi_{-9}: the P = 1 negative cell gives Z[1/3] on fixed points, and the
    # underlying stem -9 sees exactly one Z[1/3] among all cells
    bottom = SliceCell("negative", (0, 0))
    total = _stem_group(bottom, -9)
    under = FGAbelianGroup.zero()
    for c in slice_cells(-60, 60):
        under = under + c.homotopy(Degree(-9, 0)).underlying
    if total != FGAbelianGroup.free(1) or under != FGAbelianGroup.free(1):
        raise IndexMapError(
            f"pi_-9 from the bottom negative cell is {total.pretty()} (underlying {under.pretty()}), expected Z[1/3]"
        )
    v = Degree(-5, 0) - RHO * 2
    summands = [c.homotopy(v) for c in slice_cells(-60, 60)]
    summands = [s for s in summands if not s.is_zero]
    if len(summands) != 1 or summands[0] != named_mackey("Zstar"):
        got = ", ".join(s.pretty() for s in summands) or "0"
        raise IndexMapError(f"pi_(-5-2rho) from slice cells is {got}, expected Z*")
    return {"pi_-9": total.pretty(), "pi_-5-2rho": summands[0].pretty()}


def slice_e2(cells: Iterable[SliceCell], stems: tuple[int, int]) -> dict[tuple[int, int], FGAbelianGroup]:
    """The fixed-point E2 chart ``(stem, s) -> group`` over the stem range."""
    validate_index_map()
    chart: dict[tuple[int, int], FGAbelianGroup] = {}
    for cell in cells:
        for m in range(stems[0], stems[1] + 1):
            g = _stem_group(cell, m)
            if g.is_zero:
                continue
            key = (m, cell.slice_index - m)
            chart[key] = chart.get(key, FGAbelianGroup.zero()) + g
    return dict(sorted(chart.items()))


def slice_e2_mackey(cells: Iterable[SliceCell], v: Degree) -> list[tuple[SliceCell, MackeyFunctor]]:
    """Nonzero Mackey-valued contributions of the cells to ``pi_V``."""
    out = []
    for cell in cells:
        mf = cell.homotopy(v)
        if not mf.is_zero:
            out.append((cell, mf))
    return out


# -- negative-region differentials ------------------------------------------

def _line_class(cell: SliceCell) -> tuple[int, int]:
    """Position of the class with cohomological index 3 in a negative cell."""
    d = cell.weight + 4
    return (-4 - d, 3 - d)


def forced_negative_differentials(
    chart: dict[tuple[int, int], FGAbelianGroup], r_max: int = 15
) -> list[dict]:
    """Differentials on the line L of slope one through (-8, -1).

    The class of the cell for P is ``eta^{-g} nu^{-h}`` times the class at
    (-8, -1).  Since eta^3 and nu^3 are hit by d3 and d7 over tmf_1(3) and
    nothing on L can be hit, ``eta^{-3} x`` supports a d3 and ``nu^{-3} x``
    a d7 unless a d3 already applies.  Everything else on L is reported as
    a permanent candidate when no target exists, and flagged otherwise.
    """
    out = []
    if not chart:
        return out
    lowest = min(m for m, _ in chart)
    hits: dict[tuple[int, int], int] = {}
    for (m, s), grp in chart.items():
        if m - s != -7 or grp.two_rank == 0 or m > -8:
            continue
        for g, h in _monomials(-8 - m):
            if g >= 3:
                r, why = 3, "eta^-3"
            elif h >= 3:
                r, why = 7, "nu^-3"
            else:
                r, why = None, None
            entry = {"source": [m, s], "monomial": [g, h], "r": r, "target": None, "reason": why}
            if m - 1 < lowest:
                entry["status"] = "out-of-window"
            elif r is not None:
                tgt = (m - 1, s + r)
                entry["target"] = list(tgt)
                hits[tgt] = hits.get(tgt, 0) + 1
                entry["status"] = "forced"
            else:
                entry["status"] = "open"
            out.append(entry)

    def room(key: tuple[int, int]) -> int:
        return chart.get(key, FGAbelianGroup.zero()).two_rank - hits.get(key, 0)

    for entry in out:
        tgt = entry["target"]
        if tgt is not None and room(tuple(tgt)) < 0:
            # a target absorbs at most as many sources as it has Z/2 summands
            entry["status"] = "inconsistent"
        elif entry["status"] == "open":
            m, s = entry["source"]
            possible = [q for q in range(2, r_max + 1) if room((m - 1, s + q)) > 0]
            entry["status"] = "undetermined" if possible else "permanent-candidate"
            if possible:
                entry["possible_r"] = possible
    return out


# -- integer-graded homotopy -------------------------------------------------

def pi_compactified(n: int) -> FGAbelianGroup:
    """``pi_n Tmf_1(3)`` from ``H^0`` and ``H^1`` of the weighted projective line.

    >>> pi_compactified(0).pretty(), pi_compactified(-9).pretty(), pi_compactified(-5).pretty()
    ('Z[1/3]', 'Z[1/3]', '0')
    """
    if n % 2 == 0:
        k = n // 2
        r = len(_monomials(k))
    else:
        # 1/(a1^i a3^j) with i, j >= 1 has omega-degree -(i + 3j) and stem 2*deg - 1
        k = -(n + 1) // 2
        r = len(_monomials(k - 4)) if k >= 4 else 0
    return FGAbelianGroup.free(r)


def underlying_euler_check(stems: tuple[int, int]) -> dict:
    """Underlying slice E2 rank per stem against ``pi_compactified``."""
    cells = slice_cells(2 * stems[0] - 10, 2 * stems[1] + 10)
    rows = []
    for n in range(stems[0], stems[1] + 1):
        rank = 0
        for c in cells:
            dim = c.dimension.underlying_dimension
            if dim == n:
                rank += 1
        rows.append({"stem": n, "slice": rank, "expected": pi_compactified(n).free_rank})
    return {"rows": rows, "ok": all(r["slice"] == r["expected"] for r in rows)}


def band_check(coefficients: dict[int, FGAbelianGroup], k_range: Iterable[int]) -> dict:
    """Slice E2 near ``k rho`` against the near-rho table.

    The underlying ring has ``pi_{2m}`` free of the given rank, so the
    slice cells are ``S^{m rho} ^ HZ``; their contributions in degrees
    ``k rho + j`` for j = -2..1 must reproduce ``homotopy_near_rho``.
    """
    cells = {n // 2: g.free_rank for n, g in coefficients.items() if n % 2 == 0 and g.free_rank}
    failures = []
    checked = 0
    for k in k_range:
        for j in (-2, -1, 0, 1):
            parts = []
            for m, r in cells.items():
                mf = hz_homotopy(k - m + j, k - m)
                if not mf.is_zero:
                    parts += [mf] * r
            got = direct_sum(*parts) if parts else zero_mackey()
            want = homotopy_near_rho(coefficients, k, j)
            checked += 1
            if got != want:
                failures.append({"k": k, "j": j, "expected": want.pretty(), "got": got.pretty()})
    return {"checked": checked, "failures": failures, "ok": not failures}
