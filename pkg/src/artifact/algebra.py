"""Graded-commutative monomial algebras over Z[1/3].

An algebra is a list of generators, each with an RO(C2) degree, a filtration,
an annihilator (0 for free, 2 for 2-torsion) and a flag for Laurent
generators.  Monomials are exponent vectors; internally they are plain tuples
in generator order so that the spectral-sequence engine can work on them
without wrapping.

>>> A = tmf_e2_algebra()
>>> [m.pretty() for m in basis_in_bidegree(A, Degree(3, 3), 0)]
['a1bar^3', 'a3bar']
>>> x = A.gen("a_sigma")
>>> (2 * x).is_zero()
True
>>> expand_named("Delta").pretty()
'a1^3*a3^3 - 27*a3^4'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from operator import add
from typing import Iterable, Iterator, Mapping, Sequence

from .abelian import FGAbelianGroup, smith_normal_form
from .grading import Degree

__all__ = [
    "Generator",
    "Monomial",
    "Element",
    "MonomialAlgebra",
    "ExponentWindow",
    "RewriteRule",
    "EnumerationError",
    "WindowTooSmall",
    "RingPresentation",
    "DEFAULT_BOUND",
    "tmf_e2_algebra",
    "basis_in_bidegree",
    "multiply",
    "localize",
    "degree_zero_subring",
    "unit_group",
    "expand_named",
    "parse_element",
]

DEFAULT_BOUND = 128

Vec = tuple[int, ...]


class EnumerationError(ValueError):
    """The requested monomial set is infinite."""


class WindowTooSmall(ValueError):
    """A computation needed monomials outside the exponent window."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: Degree
    filtration: int = 0
    annihilator: int = 0
    invertible: bool = False

    def __post_init__(self) -> None:
        if self.annihilator not in (0, 2):
            raise ValueError("annihilator must be 0 or 2")
        if self.filtration < 0:
            raise ValueError("filtration must be non-negative")
        if self.invertible and self.annihilator:
            raise ValueError(f"{self.name}: Laurent generators cannot be torsion")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree.to_json(),
            "filtration": self.filtration,
            "annihilator": self.annihilator,
            "invertible": self.invertible,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Generator":
        return cls(
            str(data["name"]),
            Degree.from_json(data["degree"]),
            int(data.get("filtration", 0)),
            int(data.get("annihilator", 0)),
            bool(data.get("invertible", False)),
        )


@dataclass(frozen=True, order=True)
class Monomial:
    """A finite map from generator names to nonzero exponents."""

    exponents: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        items = tuple(sorted((str(k), int(v)) for k, v in self.exponents if v))
        object.__setattr__(self, "exponents", items)

    @classmethod
    def of(cls, mapping: Mapping[str, int] | None = None, **kwargs: int) -> "Monomial":
        d = dict(mapping or {})
        d.update(kwargs)
        return cls(tuple(d.items()))

    def __getitem__(self, name: str) -> int:
        for k, v in self.exponents:
            if k == name:
                return v
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = self.as_dict()
        for k, v in other.exponents:
            d[k] = d.get(k, 0) + v
        return Monomial(tuple(d.items()))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(tuple((k, v * n) for k, v in self.exponents))

    def pretty(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self.exponents)


@dataclass(frozen=True)
class RewriteRule:
    """``lhs -> rhs`` applied to any monomial divisible by ``lhs``."""

    lhs: Monomial
    rhs: tuple[tuple[Monomial, int], ...]


@dataclass(frozen=True)
class ExponentWindow:
    """Exponent bounds for monomial enumeration.

    ``ranges`` gives hard bounds: monomials outside them are simply not part
    of the (sub)complex under study.  ``bound`` is a guard: if a monomial of
    the requested degree exists with some exponent beyond ``±bound`` the
    enumeration raises instead of truncating.  ``bound=None`` switches the
    guard off, in which case an infinite answer raises EnumerationError.
    """

    bound: int | None = DEFAULT_BOUND
    ranges: tuple[tuple[str, int | None, int | None], ...] = ()

    @classmethod
    def lower(cls, bound: int | None = DEFAULT_BOUND, **lows: int) -> "ExponentWindow":
        return cls(bound, tuple((k, v, None) for k, v in sorted(lows.items())))

    def hard_limits(self, A: "MonomialAlgebra") -> list[tuple[int | None, int | None]]:
        lims: list[tuple[int | None, int | None]] = [
            (None, None) if g.invertible else (0, None) for g in A.generators
        ]
        for name, lo, hi in self.ranges:
            i = A.index(name)
            cur_lo, cur_hi = lims[i]
            if lo is not None:
                cur_lo = lo if cur_lo is None else max(cur_lo, lo)
            if hi is not None:
                cur_hi = hi if cur_hi is None else min(cur_hi, hi)
            lims[i] = (cur_lo, cur_hi)
        return lims


class MonomialAlgebra:
    """Generators with degrees, modulo ``2*m = 0`` for torsion monomials.

    An optional list of rewrite rules turns the monomials into a normal-form
    basis of a quotient (used for the formal generator Dbar).
    """

    def __init__(self, generators: Sequence[Generator], rules: Sequence[RewriteRule] = ()):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.generators: tuple[Generator, ...] = tuple(generators)
        self.names: tuple[str, ...] = tuple(names)
        self._index = {n: i for i, n in enumerate(names)}
        self.rules: tuple[RewriteRule, ...] = tuple(rules)
        self._rules_vec = [
            (self.vec(r.lhs), [(self.vec(m), c) for m, c in r.rhs]) for r in self.rules
        ]
        self._torsion_idx = tuple(i for i, g in enumerate(generators) if g.annihilator)
        # sort key: exponent vector read in name order
        self._name_order = tuple(sorted(range(len(names)), key=lambda i: names[i]))
        self._solver: tuple | None = None

    # -- bookkeeping -------------------------------------------------------
    def __repr__(self) -> str:
        return f"MonomialAlgebra({list(self.names)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialAlgebra)
            and self.generators == other.generators
            and self.rules == other.rules
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.rules))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def generator(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def vec(self, m: Monomial) -> Vec:
        v = [0] * len(self.names)
        for k, e in m.exponents:
            v[self.index(k)] = e
        return tuple(v)

    def mono(self, v: Vec) -> Monomial:
        return Monomial(tuple(zip(self.names, v)))

    def sort_key(self, v: Vec) -> tuple[int, ...]:
        return tuple(v[i] for i in self._name_order)

    # -- degrees -----------------------------------------------------------
    def degree_of(self, v: Vec) -> Degree:
        a = b = 0
        for e, g in zip(v, self.generators):
            if e:
                a += e * g.degree.a
                b += e * g.degree.b
        return Degree(a, b)

    def filtration_of(self, v: Vec) -> int:
        return sum(e * g.filtration for e, g in zip(v, self.generators) if e)

    def key_of(self, v: Vec) -> tuple[int, int, int]:
        d = self.degree_of(v)
        return (d.a, d.b, self.filtration_of(v))

    def annihilator_of(self, v: Vec) -> int:
        for i in self._torsion_idx:
            if v[i] > 0:
                return 2
        return 0

    def is_normal(self, v: Vec) -> bool:
        for lhs, _ in self._rules_vec:
            if all(x >= l for x, l in zip(v, lhs) if l):
                return False
        return True

    def check_exponents(self, v: Vec) -> None:
        for e, g in zip(v, self.generators):
            if e < 0 and not g.invertible:
                raise ValueError(f"negative exponent on non-invertible generator {g.name}")

    # -- elements ----------------------------------------------------------
    def normalize(self, terms: Mapping[Vec, int] | Iterable[tuple[Vec, int]]) -> dict[Vec, int]:
        """Apply rewrite rules and annihilator reduction; drop zeros."""
        if isinstance(terms, dict):
            res = terms
        else:
            res = {}
            for v, c in (terms.items() if isinstance(terms, Mapping) else terms):
                res[v] = res.get(v, 0) + c
        if not self._rules_vec:
            tors = self._torsion_idx
            out = {}
            for v, c in res.items():
                if c and tors:
                    for i in tors:
                        if v[i] > 0:
                            c %= 2
                            break
                if c:
                    out[v] = c
            return out
        # rewrite with a merging worklist so equal monomials combine early
        rules = self._rules_vec
        pending: dict[Vec, int] = {}
        out: dict[Vec, int] = {}

        def push(v: Vec, c: int) -> None:
            if self.annihilator_of(v):
                c %= 2
            if not c:
                return
            for lhs, rhs in rules:
                if all(x >= l for x, l in zip(v, lhs) if l):
                    c2 = pending.get(v, 0) + c
                    if c2:
                        pending[v] = c2
                    else:
                        pending.pop(v, None)
                    return
            c2 = out.get(v, 0) + c
            if self.annihilator_of(v):
                c2 %= 2
            if c2:
                out[v] = c2
            else:
                out.pop(v, None)

        for v, c in res.items():
            push(v, c)
        # rewriting lowers the exponents in the rule supports, so take the
        # largest first: every monomial is then rewritten once
        support = sorted({i for lhs, _ in rules for i, l in enumerate(lhs) if l})
        while pending:
            v = max(pending, key=lambda w: (sum(w[i] for i in support), self.sort_key(w)))
            c = pending.pop(v)
            for lhs, rhs in rules:
                if all(x >= l for x, l in zip(v, lhs) if l):
                    base = tuple(x - l for x, l in zip(v, lhs))
                    for w, cw in rhs:
                        push(tuple(x + y for x, y in zip(base, w)), c * cw)
                    break
        return out

    def element(self, terms: Mapping[Vec, int] | Iterable[tuple[Vec, int]] = (), *, reduce: bool = True) -> "Element":
        if reduce:
            return Element(self, self.normalize(terms))
        raw = dict(terms) if not isinstance(terms, dict) else terms
        return Element(self, {v: c for v, c in raw.items() if c})

    def one(self) -> "Element":
        return Element(self, {tuple([0] * len(self.names)): 1})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, name: str, power: int = 1) -> "Element":
        v = [0] * len(self.names)
        v[self.index(name)] = power
        v = tuple(v)
        self.check_exponents(v)
        return self.element({v: 1})

    def monomial(self, m: Monomial | Mapping[str, int] | None = None, **kwargs: int) -> "Element":
        if not isinstance(m, Monomial):
            m = Monomial.of(m, **kwargs)
        v = self.vec(m)
        self.check_exponents(v)
        return self.element({v: 1})

    def mul_vec(self, v: Vec, w: Vec) -> Vec:
        return tuple(x + y for x, y in zip(v, w))

    # -- (de)serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: Mapping) -> "MonomialAlgebra":
        if "generators" not in data:
            raise ValueError("algebra JSON needs a 'generators' list")
        return cls([Generator.from_json(g) for g in data["generators"]])

    # -- enumeration -------------------------------------------------------
    def _linear_solver(self) -> tuple:
        if self._solver is None:
            rows = [
                [g.degree.a for g in self.generators],
                [g.degree.b for g in self.generators],
                [g.filtration for g in self.generators],
            ]
            diag, left, right = smith_normal_form(rows)
            rank = sum(1 for d in diag if d)
            n = len(self.generators)
            kernel = [[right[i][j] for i in range(n)] for j in range(rank, n)]
            self._solver = (diag[:rank], left, right, rank, kernel)
        return self._solver

    def solutions(self, a: int, b: int, s: int, window: ExponentWindow | None = None) -> list[Vec]:
        """All exponent vectors of the given degree and filtration (unsorted)."""
        window = window or ExponentWindow()
        diag, left, right, rank, kernel = self._linear_solver()
        z = []
        for i in range(3):
            li = left[i]
            wi = li[0] * a + li[1] * b + li[2] * s
            if i < rank:
                q, rem = divmod(wi, diag[i])
                if rem:
                    return []
                z.append(q)
            elif wi:
                return []
        n = len(self.generators)
        z += [0] * (n - len(z))
        x0 = [sum(right[i][j] * z[j] for j in range(n)) for i in range(n)]
        lims = window.hard_limits(self)
        cons: list[tuple[list[int], int]] = []
        for i, (lo, hi) in enumerate(lims):
            coeffs = [k[i] for k in kernel]
            if hi is not None:
                cons.append((coeffs, hi - x0[i]))
            if lo is not None:
                cons.append(([-c for c in coeffs], x0[i] - lo))
        out = []
        if len(kernel) == 1:
            # fast path: an interval of multiples of the kernel vector
            lo = hi = None
            for (c,), r in cons:
                if c > 0:
                    q = r // c
                    hi = q if hi is None else min(hi, q)
                elif c < 0:
                    q = -(r // -c)
                    lo = q if lo is None else max(lo, q)
                elif r < 0:
                    return []
            if lo is None or hi is None:
                raise EnumerationError(
                    "degree map has a nontrivial kernel on the exponent cone; pass a window"
                )
            if lo > hi:
                return []
            k0 = tuple(kernel[0])
            v = tuple(x + lo * k for x, k in zip(x0, k0))
            for _ in range(hi - lo + 1):
                out.append(v)
                v = tuple(map(add, v, k0))
        else:
            for t in _lattice_points(cons, len(kernel)):
                v = tuple(x0[i] + sum(kernel[j][i] * t[j] for j in range(len(kernel))) for i in range(n))
                out.append(v)
        if window.bound is not None and out:
            # extremes of a linear family sit at its ends
            ends = (out[0], out[-1]) if len(kernel) == 1 else out
            for v in ends:
                if max(v) > window.bound or min(v) < -window.bound:
                    raise WindowTooSmall(
                        f"degree ({a},{b}) filtration {s} needs exponents beyond {window.bound}"
                    )
        if self.rules:
            out = [v for v in out if self.is_normal(v)]
        return out

    def basis(self, a: int, b: int, s: int, window: ExponentWindow | None = None) -> list[Vec]:
        return sorted(self.solutions(a, b, s, window), key=self.sort_key, reverse=True)


def _lattice_points(cons: list[tuple[list[int], int]], k: int) -> Iterator[list[int]]:
    """Integer points t with ``c . t <= r`` for all ``(c, r)`` in ``cons``."""
    if k == 0:
        if all(r >= 0 for _, r in cons):
            yield []
        return
    lo, hi = _first_var_bounds([(list(map(Fraction, c)), Fraction(r)) for c, r in cons], k)
    if lo is None or hi is None:
        raise EnumerationError("degree map has a nontrivial kernel on the exponent cone; pass a window")
    for t0 in range(ceil(lo), floor(hi) + 1):
        sub = [(c[1:], r - c[0] * t0) for c, r in cons]
        for rest in _lattice_points(sub, k - 1):
            yield [t0] + rest


def _first_var_bounds(cons: list[tuple[list[Fraction], Fraction]], k: int) -> tuple[Fraction | None, Fraction | None]:
    # Fourier-Motzkin: eliminate t_{k-1}, ..., t_1 and read off bounds on t_0
    for var in range(k - 1, 0, -1):
        pos = [(c, r) for c, r in cons if c[var] > 0]
        neg = [(c, r) for c, r in cons if c[var] < 0]
        new = [(c, r) for c, r in cons if c[var] == 0]
        for cp, rp in pos:
            for cn, rn in neg:
                lp, ln = -cn[var], cp[var]
                c = [lp * x + ln * y for x, y in zip(cp, cn)]
                new.append((c, lp * rp + ln * rn))
        cons = new
    lo = hi = None
    for c, r in cons:
        if c[0] > 0:
            v = r / c[0]
            hi = v if hi is None else min(hi, v)
        elif c[0] < 0:
            v = r / c[0]
            lo = v if lo is None else max(lo, v)
        elif r < 0:
            return Fraction(1), Fraction(0)
    return lo, hi


class Element:
    """A finite Z-combination of monomials of one algebra."""

    __slots__ = ("algebra", "vterms")

    def __init__(self, algebra: MonomialAlgebra, vterms: dict[Vec, int]):
        self.algebra = algebra
        self.vterms = vterms

    @property
    def terms(self) -> dict[Monomial, int]:
        return {self.algebra.mono(v): c for v, c in self.vterms.items()}

    def is_zero(self) -> bool:
        return not self.vterms

    def __bool__(self) -> bool:
        return bool(self.vterms)

    def _coerce(self, other: "Element | int") -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise ValueError("elements of different algebras")
            return other
        return self.algebra.element({tuple([0] * len(self.algebra.names)): int(other)})

    def __add__(self, other: "Element | int") -> "Element":
        other = self._coerce(other)
        d = dict(self.vterms)
        for v, c in other.vterms.items():
            d[v] = d.get(v, 0) + c
        return self.algebra.element(d)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return self.algebra.element({v: -c for v, c in self.vterms.items()})

    def __sub__(self, other: "Element | int") -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "Element | int") -> "Element":
        return self._coerce(other) - self

    def __mul__(self, other: "Element | int") -> "Element":
        if isinstance(other, int):
            return self.algebra.element({v: c * other for v, c in self.vterms.items()})
        return multiply(self.algebra, self, other)

    def __rmul__(self, other: int) -> "Element":
        return self * other

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            if len(self.vterms) != 1:
                raise ValueError("only monomials can be inverted")
            (v, c), = self.vterms.items()
            if abs(c) != 1:
                raise ValueError("coefficient is not a unit")
            w = tuple(-x for x in v)
            self.algebra.check_exponents(w)
            return self.algebra.element({w: c}) ** (-n)
        out = self.algebra.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.vterms == other.vterms

    def __hash__(self) -> int:
        return hash(frozenset(self.vterms.items()))

    def equal_up_to_units(self, other: "Element") -> bool:
        """Equality after cancelling the powers of 3 in the coefficients."""
        def canon(e: Element) -> dict:
            out = {}
            for v, c in e.vterms.items():
                sign = -1 if c < 0 else 1
                c = abs(c)
                while c % 3 == 0:
                    c //= 3
                out[v] = sign * c
            return out
        return canon(self) == canon(other)

    def degrees(self) -> set[tuple[int, int, int]]:
        return {self.algebra.key_of(v) for v in self.vterms}

    def leading(self) -> Monomial:
        v = max(self.vterms, key=self.algebra.sort_key)
        return self.algebra.mono(v)

    def pretty(self) -> str:
        if not self.vterms:
            return "0"
        A = self.algebra
        parts = []
        for v in sorted(self.vterms, key=A.sort_key, reverse=True):
            c = self.vterms[v]
            m = A.mono(v).pretty()
            mag = abs(c)
            body = m if mag == 1 and m != "1" else (str(mag) if m == "1" else f"{mag}*{m}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Element({self.pretty()})"


def multiply(A: MonomialAlgebra, x: Element, y: Element) -> Element:
    """Product of two elements, reduced by annihilators and rewrite rules."""
    out: dict[Vec, int] = {}
    for v, c in x.vterms.items():
        for w, d in y.vterms.items():
            p = tuple(i + j for i, j in zip(v, w))
            out[p] = out.get(p, 0) + c * d
    for p in out:
        A.check_exponents(p)
    return A.element(out)


def basis_in_bidegree(
    A: MonomialAlgebra, d: Degree, s: int, bound: ExponentWindow | int | None = DEFAULT_BOUND
) -> list[Monomial]:
    """Monomials of degree ``d`` and filtration ``s`` in name-lexicographic order.

    ``bound`` is an ExponentWindow, an integer guard, or None (no guard;
    infinite answers raise EnumerationError).
    """
    window = bound if isinstance(bound, ExponentWindow) else ExponentWindow(bound)
    return [A.mono(v) for v in A.basis(d.a, d.b, s, window)]


def localize(A: MonomialAlgebra, name: str) -> MonomialAlgebra:
    g = A.generator(name)
    if g.annihilator:
        raise ValueError(f"cannot invert the torsion generator {name}")
    if g.invertible:
        return A
    gens = [
        Generator(h.name, h.degree, h.filtration, h.annihilator, True) if h.name == name else h
        for h in A.generators
    ]
    return MonomialAlgebra(gens, A.rules)


def tmf_e2_algebra() -> MonomialAlgebra:
    """Z[1/3][a_sigma, u^{+-1}, a1bar, a3bar]/(2 a_sigma)."""
    return MonomialAlgebra(
        [
            Generator("a_sigma", Degree(0, -1), 1, 2, False),
            Generator("u_2sigma", Degree(2, -2), 0, 0, True),
            Generator("a1bar", Degree(1, 1), 0, 0, False),
            Generator("a3bar", Degree(3, 3), 0, 0, False),
        ]
    )


# -- degree-zero subrings ----------------------------------------------------

@dataclass(frozen=True)
class RingPresentation:
    """``Z[1/3][x_1, ..., x_p][y_1^{+-1}, ..., y_q^{+-1}]`` on monomial generators."""

    polynomial: tuple[Monomial, ...] = ()
    laurent: tuple[Monomial, ...] = ()

    @property
    def kind(self) -> str:
        if self.laurent and self.polynomial:
            return "mixed"
        if self.laurent:
            return "laurent"
        if self.polynomial:
            return "polynomial"
        return "constants"

    def pretty(self) -> str:
        poly = ", ".join(m.pretty() for m in self.polynomial)
        laur = ", ".join(f"({m.pretty()})^+-1" for m in self.laurent)
        inner = ", ".join(p for p in (poly, laur) if p)
        return f"Z[1/3][{inner}]" if inner else "Z[1/3]"


def degree_zero_subring(A: MonomialAlgebra, grading: str = "equivariant") -> RingPresentation:
    """Monoid generators of the degree-zero monomials in filtration 0.

    Only torsion-free generators of filtration 0 take part.  With
    ``grading="underlying"`` a monomial has degree zero when its underlying
    dimension vanishes.
    """
    idx = [i for i, g in enumerate(A.generators) if g.filtration == 0 and not g.annihilator]
    gens = [A.generators[i] for i in idx]
    if grading == "equivariant":
        rows = [[g.degree.a for g in gens], [g.degree.b for g in gens]]
    elif grading == "underlying":
        rows = [[g.degree.underlying_dimension for g in gens]]
    else:
        raise ValueError(f"unknown grading {grading!r}")
    n = len(gens)
    if n == 0:
        return RingPresentation()
    diag, _, right = smith_normal_form(rows)
    rank = sum(1 for d in diag if d)
    kernel = [[right[i][j] for i in range(n)] for j in range(rank, n)]
    if len(kernel) > 4:
        raise ValueError("degree-zero cone of rank > 4 is unsupported")
    constrained = [j for j, g in enumerate(gens) if not g.invertible]
    laurent, pointed = _split_lineality(kernel, constrained)
    hilbert = _hilbert_basis(pointed, constrained, n)

    def to_mono(v: Sequence[int]) -> Monomial:
        return Monomial(tuple((gens[j].name, v[j]) for j in range(n)))

    def orient(v: Sequence[int]) -> list[int]:
        first = next(x for x in v if x)
        return list(v) if first > 0 else [-x for x in v]

    return RingPresentation(
        tuple(to_mono(v) for v in hilbert),
        tuple(to_mono(orient(v)) for v in laurent),
    )


def _split_lineality(kernel: list[list[int]], constrained: list[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Split the kernel lattice into the part with vanishing constrained coordinates and a complement."""
    from .abelian import hermite_rows

    if not kernel:
        return [], []
    n = len(kernel[0])
    k = len(kernel)
    # coordinates of kernel vectors on constrained generators
    proj = [[v[j] for j in constrained] for v in kernel]
    if not constrained:
        return [list(v) for v in kernel], []
    diag, left, _ = smith_normal_form(proj)
    r = sum(1 for d in diag if d)
    # rows of left @ kernel: the last k - r have zero constrained part
    combos = [[sum(left[i][t] * kernel[t][j] for t in range(k)) for j in range(n)] for i in range(k)]
    lin = hermite_rows(combos[r:], n)
    rest = combos[:r]
    return lin, rest


def _hilbert_basis(pointed: list[list[int]], constrained: list[int], n: int) -> list[list[int]]:
    """Hilbert basis of the cone ``{sum t_i v_i : constrained coordinates >= 0}``."""
    q = len(pointed)
    if q == 0:
        return []
    if q == 1:
        v = pointed[0]
        signs = {(v[j] > 0) - (v[j] < 0) for j in constrained if v[j]}
        if signs == {1}:
            return [v]
        if signs == {-1}:
            return [[-x for x in v]]
        return []
    # small ranks: brute force over a box of coefficient vectors
    box = 12
    pts = []
    import itertools

    for t in itertools.product(range(-box, box + 1), repeat=q):
        if not any(t):
            continue
        v = [sum(t[i] * pointed[i][j] for i in range(q)) for j in range(n)]
        if all(v[j] >= 0 for j in constrained):
            pts.append(v)
    pts_set = {tuple(p) for p in pts}
    irreducible = []
    for p in sorted(pts_set, key=lambda p: (sum(p[j] for j in constrained), p)):
        reducible = False
        for h in irreducible:
            diff = tuple(a - b for a, b in zip(p, h))
            if diff in pts_set:
                reducible = True
                break
        if not reducible:
            irreducible.append(p)
    if len(irreducible) > q:
        raise ValueError("degree-zero monoid is not free; not a polynomial ring")
    return [list(p) for p in irreducible]


def unit_group(R: RingPresentation) -> FGAbelianGroup:
    """Units of ``R``: the constants 3 and -1 times the Laurent generators."""
    if R.polynomial and any(m.exponents == () for m in R.polynomial):
        raise ValueError("unsupported ring shape")
    labels = ("3",) + tuple(m.pretty() for m in R.laurent) + ("-1",)
    return FGAbelianGroup(1 + len(R.laurent), (2,), labels, ground="Z")


# -- named elements ---------------------------------------------------------

def _plain_algebra(barred: bool) -> MonomialAlgebra:
    if barred:
        return MonomialAlgebra([Generator("a1bar", Degree(1, 1)), Generator("a3bar", Degree(3, 3))])
    return MonomialAlgebra([Generator("a1", Degree(2, 0)), Generator("a3", Degree(6, 0))])


def expand_named(name: str, A: MonomialAlgebra | None = None) -> Element:
    """Expanded polynomial for ``c4``, ``Delta`` or ``Dbar`` (no rewriting applied).

    In an algebra with barred generators the names ``c4`` and ``Delta``
    refer to the barred versions.
    """
    key = {"c4": "c4", "Delta": "Delta", "Δ": "Delta", "Dbar": "Dbar", "Δ̄": "Dbar"}.get(name)
    if key is None:
        raise ValueError(f"unknown named element {name!r}")
    if A is None:
        A = _plain_algebra(key == "Dbar")
    if "a1bar" in A.names:
        x, y = A.index("a1bar"), A.index("a3bar")
    elif "a1" in A.names:
        x, y = A.index("a1"), A.index("a3")
    else:
        raise ValueError("algebra has no a1/a3 generators")
    n = len(A.names)

    def v(i: int, j: int) -> Vec:
        w = [0] * n
        w[x], w[y] = i, j
        return tuple(w)

    if key == "c4":
        terms = {v(4, 0): 1, v(1, 1): -24}
    else:
        terms = {v(3, 3): 1, v(0, 4): -27}
    return A.element(terms, reduce=False)


# -- parsing -----------------------------------------------------------------

def parse_element(A: MonomialAlgebra, text: str) -> Element:
    """Parse ``"2*u_2sigma^-1*a1bar - 27*a3bar^4"`` style input."""
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    # split on + or - that are not exponent signs
    tokens = re.split(r"(?<!\^)\s*([+-])\s*", text)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    if len(tokens) % 2:
        raise ValueError(f"cannot parse element {text!r}")
    out: dict[Vec, int] = {}
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        coeff = -1 if sign == "-" else 1
        v = [0] * len(A.names)
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"cannot parse element {text!r}")
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            if "^" in factor:
                nm, ex = factor.split("^", 1)
                ex = int(ex)
            else:
                nm, ex = factor, 1
            v[A.index(nm.strip())] += ex
        v = tuple(v)
        A.check_exponents(v)
        out[v] = out.get(v, 0) + coeff
    return A.element(out)
