"""Picard groups of TMF_1(3), its localizations and Tmf_1(3) as C_2-spectra.

The pipeline has four steps.
1. Algebraic Picard groups of the graded homotopy rings.  Every invertible
   module is taken to be a suspension, so Pic is Z modulo the degrees of
   homogeneous units.
2. The zero column of the Picard spectral sequence.  Rows s = 0, 1 hold group
   cohomology.  The rows 2 <= s <= 7 come from the (-1)-column of the homotopy
   fixed point spectral sequence, and d^Pic(x) = d^HF(x) + x^2 there.
3. A lower bound from the smallest period found in the engine.
4. A Mayer-Vietoris ladder that assembles Tmf_1(3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Mapping, Sequence

from .abelian import FGAbelianGroup, smith_normal_form
from .algebra import Element, Monomial, multiply, expand_named, _plain_algebra
from .grading import Degree, RHO
from .sseq import leibniz_extend
from .tmf13 import _no_late_targets, build_scenario, e_infinity_page

__all__ = [
    "TARGETS",
    "ASSUMPTIONS",
    "presented_quotient",
    "algebraic_pic_suspensions",
    "unit_degrees",
    "irreducible_linear",
    "TailGenerator",
    "PicColumn",
    "picard_ss_zero_column",
    "assemble_order_bound",
    "tail_generators",
    "smallest_period",
    "mv_assemble",
    "picard_pipeline",
]

TARGETS = ("TMF13", "Tmf13", "a1inv", "a3inv", "a1a3inv")
_SCENARIO = {"TMF13": "TMF13", "a1inv": "tmf13_a1inv", "a3inv": "tmf13_a3inv", "a1a3inv": "tmf13_a1a3inv"}

ASSUMPTIONS = {
    "suspensions": "every invertible module over the graded homotopy ring is a suspension",
    "h1": "C_2 acts trivially on the units of Z[1/3], so H^1(C_2; units) is their 2-torsion",
    "tail": "rows 2 <= s <= 7 of the zero column are spanned by gamma^k b3 and gamma^k b7",
    "high": "classes in rows s >= 8 support differentials or are hit",
}


# -- group presentations ------------------------------------------------------

def _inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def _combo(coeffs: Sequence[int], labels: Sequence[str]) -> str:
    parts = []
    for c, lab in zip(coeffs, labels):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        parts.append((sign, f"{mag}{lab}"))
    if not parts:
        return "0"
    text = "".join(f"{s}{t}" for s, t in parts)
    return text[1:] if text.startswith("+") else text


def presented_quotient(
    relations: Sequence[Sequence[int]], labels: Sequence[str], ground: str = "Z"
) -> FGAbelianGroup:
    """``Z{labels} / relations`` in Smith normal form, with generator names.

    >>> g = presented_quotient([[8, -8]], ["1", "sigma"])
    >>> g.pretty(), g.generator_labels
    ('Z + Z/8', ('sigma', '1-sigma'))
    >>> presented_quotient([[8, -8], [3, 3]], ["1", "sigma"]).pretty()
    'Z/48'
    """
    n = len(labels)
    rel = [list(r) for r in relations if any(r)]
    if not rel:
        return FGAbelianGroup(n, (), tuple(labels), ground)
    diag, _, right = smith_normal_form(rel)
    inv = _inverse(right)
    diag = list(diag) + [0] * (n - len(diag))
    torsion, free = [], []
    for i, d in enumerate(diag):
        name = _combo(inv[i], labels)
        if d == 0:
            free.append(name)
        elif d != 1:
            torsion.append((d, name))
    group = FGAbelianGroup(len(free), tuple(d for d, _ in torsion), tuple(free + [t for _, t in torsion]), ground)
    return group


# -- algebraic Picard groups ---------------------------------------------------

def algebraic_pic_suspensions(degrees: Mapping[str, int] | Sequence[int]) -> FGAbelianGroup:
    """Z modulo the degrees of the homogeneous units.

    >>> algebraic_pic_suspensions([6, 6, 24]).pretty()
    'Z/6'
    >>> algebraic_pic_suspensions([2]).pretty()
    'Z/2'
    """
    ds = list(degrees.values()) if isinstance(degrees, Mapping) else list(degrees)
    g = reduce(gcd, ds, 0)
    if g == 0:
        return FGAbelianGroup.free(1, ("Sigma^1",), ground="Z")
    if g == 1:
        return FGAbelianGroup.zero("Z")
    return FGAbelianGroup.cyclic(g, ("Sigma^1",), ground="Z")


def irreducible_linear(coefficients: Sequence[Element]) -> bool:
    """Irreducibility of ``c_1 y + c_0`` over Z[1/3][x], coefficients in x alone.

    A polynomial of degree one in y is irreducible when its coefficients
    have no common factor: their gcd over Q[x] is constant and the gcd of all
    integer coefficients is a power of 3.
    """
    polys = []
    content = 0
    for c in coefficients:
        terms = c.terms
        if not terms:
            continue
        degs = {}
        for m, coef in terms.items():
            exps = [e for _, e in m.exponents]
            if len(exps) > 1:
                raise ValueError("coefficients must involve a single variable")
            degs[exps[0] if exps else 0] = coef
            content = gcd(content, coef)
        polys.append([Fraction(degs.get(i, 0)) for i in range(max(degs) + 1)])
    while content and content % 3 == 0:
        content //= 3
    if content != 1:
        return False
    g = reduce(_poly_gcd, polys)
    return len(g) == 1


def _poly_gcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    def trim(a):
        while a and a[-1] == 0:
            a = a[:-1]
        return a

    p, q = trim(p), trim(q)
    while q:
        r = list(p)
        while len(r) >= len(q) and r:
            f = r[-1] / q[-1]
            shift = len(r) - len(q)
            for i, c in enumerate(q):
                r[i + shift] -= f * c
            r = trim(r)
        p, q = q, r
    return p


def unit_degrees(target: str) -> dict[str, int]:
    """Topological degrees of the generating homogeneous units (beyond +-3^k)."""
    if target == "a1inv":
        return {"a1": 2}
    if target == "a3inv":
        return {"a3": 6}
    if target == "a1a3inv":
        return {"a1": 2, "a3": 6}
    if target == "TMF13":
        A = _plain_algebra(False)
        a1, a3 = A.gen("a1"), A.gen("a3")
        other = a1 ** 3 - 27 * a3
        delta = expand_named("Delta", A)
        if multiply(A, a3 ** 3, other) != delta:
            raise AssertionError("Delta does not factor as a3^3 (a1^3 - 27 a3)")
        if not irreducible_linear([-27 * A.one(), a1 ** 3]):
            raise AssertionError("a1^3 - 27 a3 is reducible")
        return {"a3": 6, "a1^3-27a3": 6, "Delta": 24}
    raise ValueError(f"no algebraic unit data for {target!r}")


# -- the zero column -----------------------------------------------------------

@dataclass(frozen=True)
class TailGenerator:
    name: str
    s: int
    representative: str
    present: bool = True


@dataclass
class PicColumn:
    rows: list[dict] = field(default_factory=list)

    def survivors(self) -> list[dict]:
        return [r for r in self.rows if r["fate"] == "survives"]

    def to_json(self) -> dict:
        return {"rows": self.rows}


def picard_ss_zero_column(
    h0: FGAbelianGroup,
    h1: FGAbelianGroup,
    tail: Sequence[TailGenerator],
    k_max: int = 8,
) -> PicColumn:
    """Fates in the zero column of the Picard spectral sequence.

    For a tail generator b in row s, the first possible differential on
    ``gamma^k b`` is ``d_s^Pic = d_s^HF + square``, which is
    ``(gamma^k + gamma^(2k)) b^2``.  In F2[gamma] this vanishes only for k = 0.
    """
    col = PicColumn()
    col.rows.append({"s": 0, "group": h0.pretty(), "order": h0.order(), "fate": "survives"})
    col.rows.append({"s": 1, "group": h1.pretty(), "order": h1.order(), "fate": "survives"})
    for b in tail:
        if not b.present:
            continue
        for k in range(k_max + 1):
            # (gamma^k + gamma^2k) b^2 as an F2[gamma]-combination: exponents with odd multiplicity
            exps = {k: 1}
            exps[2 * k] = exps.get(2 * k, 0) + 1
            image = sorted(e for e, c in exps.items() if c % 2)
            label = b.name if k == 0 else f"gamma^{k} {b.name}"
            if image:
                target = " + ".join(f"gamma^{e} {b.name}^2" for e in image)
                col.rows.append({"s": b.s, "group": "Z/2", "class": label, "order": 2, "fate": f"dies-by(d{b.s})", "target": target})
            else:
                col.rows.append({"s": b.s, "group": "Z/2", "class": label, "order": 2, "fate": "survives"})
    col.rows.append({"s": ">=8", "group": "*", "order": 1, "fate": "hit-or-supports"})
    return col


def assemble_order_bound(column: PicColumn) -> int:
    return prod(r["order"] for r in column.survivors() if r["order"])


def tail_generators(target: str, truncation: int = 2) -> tuple[list[TailGenerator], dict]:
    """b3 and b7 with a membership check in the engine.

    A generator is present when its representative is a nonzero class on
    the page where its first differential starts.  The engine also confirms
    ``d^HF(gamma^k b) = gamma^k b^2`` for gamma = a3bar^4 / Dbar.
    """
    sc = build_scenario(_SCENARIO[target], truncation=truncation)
    A = sc.algebra
    page = e_infinity_page(sc, sc.window(16, 32))
    pages = {p.r: p for p in page.chain()}
    asig, a1, a3 = A.gen("a_sigma"), A.gen("a1bar"), A.gen("a3bar")
    uinv = A.gen("u_2sigma", -1)
    reps = {"b3": (3, asig ** 3 * a1 * uinv), "b7": (7, asig ** 7 * a3 * uinv ** 2)}
    d3, d7 = sc.differentials
    diffs = {3: d3, 7: d7}
    checks = {}
    gens = []
    for name, (s, x) in reps.items():
        present = pages[s].represents_nonzero(x)
        gens.append(TailGenerator(name, s, x.pretty(), present))
        hf = leibniz_extend(diffs[s], x)
        sq = x * x
        checks[f"d{s}({name}) = {name}^2"] = pages[s].is_boundary(hf - sq) if present else None
        if target == "TMF13" and present:
            gamma = A.gen("a3bar") ** 4 * A.gen("Dbar", -1)
            ok = True
            for k in range(1, 3):
                y = gamma ** k * x
                ok &= pages[s].is_boundary(leibniz_extend(diffs[s], y) - gamma ** k * sq)
            checks[f"d{s}(gamma^k {name}) = gamma^k {name}^2"] = ok
    return gens, checks


def smallest_period(target: str, n_max: int = 96, truncation: int = 2) -> int | None:
    """Least n > 0 with a unit of the scenario surviving in degree n.

    The units are monomials in the invertible generators sitting in
    filtration 0; a permanent one gives an equivalence with the n-fold
    suspension.
    """
    sc = build_scenario(_SCENARIO[target], truncation=truncation)
    window = sc.window(n_max + 2, n_max + 16)
    page = e_infinity_page(sc, window)
    A = sc.algebra
    inv = [i for i, g in enumerate(A.generators) if g.invertible]
    for n in range(1, n_max + 1):
        key = (n, 0, 0)
        for v in page.basis(key):
            if any(e for i, e in enumerate(v) if i not in inv):
                continue
            x = A.element({v: 1})
            if page.fate(x)["status"] == "permanent" and not _no_late_targets(page, key, 8, n_max + 8):
                return n
    return None


# -- Mayer-Vietoris assembly ---------------------------------------------------

def mv_assemble(
    units13: FGAbelianGroup,
    boundary_image: Mapping[str, Degree],
    ker_g: FGAbelianGroup,
    period_relation: Degree = Degree(8, -8),
) -> dict:
    """Assemble Pic Tmf_1(3) from the Mayer-Vietoris ladder.

    The unit groups of Z[1/3][x] and Z[1/3][y] map to those of
    Z[1/3][z^{+-1}], where z is the ratio generator; the cokernel is free
    on z.  The bottom row is ``Z -> RO(C_2)/(period) -> RO(C_2)/(period, d)``,
    where d is the suspension that the boundary map assigns to z.  The
    outer comparison maps must be isomorphisms, and then so is the middle.
    """
    failures = []
    # coker f: target basis (3, -1, z); both sources hit 3 and -1
    labels = [lab for lab in units13.generator_labels if lab not in ("3", "-1")]
    coker = presented_quotient([[1, 0] + [0] * len(labels), [0, 1] + [0] * len(labels), [0, 2] + [0] * len(labels)], ["3", "-1"] + labels)
    if coker.free_rank != len(boundary_image) or coker.invariant_factors:
        failures.append(f"coker(f) is {coker.pretty()}, expected free of rank {len(boundary_image)}")
    if set(coker.generator_labels) != set(boundary_image):
        failures.append("boundary images are not given on the generators of coker(f)")
    ro = presented_quotient([[period_relation.a, period_relation.b]], ["1", "sigma"]) if period_relation != Degree(0, 0) else FGAbelianGroup.free(2, ("1", "sigma"), ground="Z")
    rels = [[period_relation.a, period_relation.b]] + [[d.a, d.b] for d in boundary_image.values()]
    bottom = presented_quotient(rels, ["1", "sigma"])
    if (bottom.free_rank, bottom.invariant_factors) != (ker_g.free_rank, ker_g.invariant_factors):
        failures.append(f"RO(C_2)/relations is {bottom.pretty()} but ker(g) is {ker_g.pretty()}")
    # Z -> RO(C_2)/(period) must be injective: the image has infinite order
    for lab, d in boundary_image.items():
        if presented_quotient([[period_relation.a, period_relation.b], [d.a, d.b]], ["1", "sigma"]).free_rank != ro.free_rank - 1:
            failures.append(f"boundary image of {lab} has finite order")
    return {
        "coker_f": coker,
        "bottom": bottom,
        "group": ro if not failures else None,
        "failures": failures,
        "ok": not failures,
    }


def _column_for(target: str, truncation: int = 2) -> tuple[PicColumn, dict, FGAbelianGroup]:
    alg = algebraic_pic_suspensions(unit_degrees(target))
    units = FGAbelianGroup(1, (2,), ("3", "-1"), ground="Z")
    h1 = units.two_torsion_subgroup()
    tail, checks = tail_generators(target, truncation)
    return picard_ss_zero_column(alg, h1, tail), checks, alg


def picard_pipeline(target: str, truncation: int = 2) -> dict:
    """Pic of the chosen target with provenance of every step."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if target == "Tmf13":
        z = "a1bar^3*a3bar^-1"
        units = FGAbelianGroup(2, (2,), ("3", z, "-1"), ground="Z")
        ker_g = FGAbelianGroup.cyclic(picard_pipeline("TMF13", truncation)["order"], ground="Z")
        mv = mv_assemble(units, {z: RHO * 3}, ker_g)
        group = mv["group"]
        return {
            "target": target,
            "group": group.to_json() if group else None,
            "pretty": group.pretty() if group else None,
            "generators": list(group.generator_labels) if group else [],
            "coker_f": mv["coker_f"].pretty(),
            "bottom_row": mv["bottom"].pretty(),
            "failures": mv["failures"],
            "assumptions": sorted(ASSUMPTIONS),
            "ok": mv["ok"],
        }
    column, checks, alg = _column_for(target, truncation)
    bound = assemble_order_bound(column)
    period = smallest_period(target, n_max=2 * bound, truncation=truncation)
    ok = period == bound and all(v is not False for v in checks.values())
    group = FGAbelianGroup.cyclic(bound, ("Sigma^1",), ground="Z") if ok else None
    return {
        "target": target,
        "algebraic": alg.pretty(),
        "algebraic_order": alg.order(),
        "column": column.to_json(),
        "order_bound": bound,
        "smallest_period": period,
        "engine_checks": checks,
        "order": bound,
        "group": group.to_json() if group else None,
        "pretty": group.pretty() if group else None,
        "generators": ["Sigma^1"] if group else [],
        "assumptions": sorted(ASSUMPTIONS),
        "ok": ok,
    }
