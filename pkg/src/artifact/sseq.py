"""Pages of RO(C2)-graded multiplicative spectral sequences.

A piece of a page lives at a key ``(a, b, s)``: degree ``a + b*sigma`` and
filtration ``s``.  Its E2 group is spanned by the monomials of that bidegree,
each a copy of Z (free monomial) or Z/2 (torsion monomial).  Page r is stored
as a pair of lattices ``B_r <= Z_r`` in Z^N, both containing the torsion
lattice, so that ``E_r = Z_r / B_r``.  When every monomial of a piece is
2-torsion the lattices are F2-subspaces held as integer bitmasks.

Pages are lazy: a piece is only computed when asked for, and each page
memoizes what it has computed.
"""

from __future__ import annotations

import logging
from operator import add
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .abelian import FGAbelianGroup, coordinates_in, hermite_rows, left_kernel, smith_normal_form
from .algebra import (
    DEFAULT_BOUND,
    Element,
    ExponentWindow,
    Monomial,
    MonomialAlgebra,
    WindowTooSmall,
    parse_element,
)
from .grading import BiDegree, Degree, differential_target

__all__ = [
    "Differential",
    "SSWindow",
    "Page",
    "ClassRecord",
    "StableResult",
    "Abutment",
    "InconsistentDifferential",
    "leibniz_extend",
    "turn_page",
    "run_to_stable",
    "abutment",
    "e2_page",
]

log = logging.getLogger(__name__)

Key = tuple[int, int, int]
Vec = tuple[int, ...]


class InconsistentDifferential(ValueError):
    """The Leibniz extension does not define a differential on the page."""


@dataclass(frozen=True)
class SSWindow:
    """Reporting window for degrees and filtrations plus the exponent window."""

    a: tuple[int, int] = (-40, 40)
    b: tuple[int, int] = (-40, 40)
    s_max: int = 64
    exponents: ExponentWindow = field(default_factory=ExponentWindow)

    @classmethod
    def square(cls, n: int, s_max: int = 64, exponents: ExponentWindow | None = None) -> "SSWindow":
        return cls((-n, n), (-n, n), s_max, exponents or ExponentWindow())

    def contains(self, key: Key) -> bool:
        a, b, s = key
        return self.a[0] <= a <= self.a[1] and self.b[0] <= b <= self.b[1] and 0 <= s <= self.s_max

    def keys(self) -> Iterator[Key]:
        for a in range(self.a[0], self.a[1] + 1):
            for b in range(self.b[0], self.b[1] + 1):
                for s in range(self.s_max + 1):
                    yield (a, b, s)

    def degrees(self) -> Iterator[Degree]:
        for a in range(self.a[0], self.a[1] + 1):
            for b in range(self.b[0], self.b[1] + 1):
                yield Degree(a, b)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "s_max": self.s_max}

    @classmethod
    def from_json(cls, data: Mapping, exponents: ExponentWindow | None = None) -> "SSWindow":
        return cls(tuple(data["a"]), tuple(data["b"]), int(data.get("s_max", 64)), exponents or ExponentWindow())


class Differential:
    """Values of ``d_r`` on generators or on powers of generators.

    Keys are generator names, or ``name^p`` when the differential is only
    defined on the p-th power (as for ``d_7(u^2)``).  Generators without a
    key are d_r-cycles.
    """

    def __init__(self, r: int, values: Mapping[str, Element] | None = None):
        if r < 2:
            raise ValueError("differentials start at r = 2")
        self.r = r
        self.values: dict[str, Element] = dict(values or {})
        self._cache: dict[Vec, dict[Vec, int]] = {}
        self._keys: dict[int, tuple[int, dict[Vec, int]]] | None = None
        self._algebra: MonomialAlgebra | None = None

    def __repr__(self) -> str:
        vals = ", ".join(f"{k}: {v.pretty()}" for k, v in sorted(self.values.items()))
        return f"Differential(r={self.r}, {{{vals}}})"

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    @staticmethod
    def parse_key(key: str) -> tuple[str, int]:
        if "^" in key:
            name, p = key.split("^", 1)
            p = int(p)
            if p < 1:
                raise ValueError(f"bad differential key {key!r}")
            return name.strip(), p
        return key.strip(), 1

    def bind(self, A: MonomialAlgebra) -> list[tuple]:
        """Precompute, per keyed generator, what the Leibniz rule needs."""
        if self._algebra is not A:
            plan = []
            seen = set()
            gens = A.generators
            n = len(gens)
            for k, val in sorted(self.values.items()):
                name, p = self.parse_key(k)
                i = A.index(name)
                if i in seen:
                    raise ValueError(f"two differential keys for generator {name}")
                seen.add(i)
                if val.algebra != A:
                    raise ValueError("differential value lives in another algebra")
                even = (p * gens[i].degree.a) % 2 == 0
                odd_prefix = tuple(j for j in range(i) if gens[j].degree.a % 2)
                shift = [0] * n
                shift[i] = -p
                vals = tuple(
                    (tuple(x + y for x, y in zip(w, shift)), c) for w, c in sorted(val.vterms.items())
                )
                plan.append((i, p, even, odd_prefix, vals))
            plan.sort()
            self._keys = plan
            self._algebra = A
            self._cache = {}
        return self._keys  # type: ignore[return-value]

    def validate(self, A: MonomialAlgebra) -> None:
        """Each value must sit in the target bidegree of its key."""
        for k, val in self.values.items():
            name, p = self.parse_key(k)
            v = [0] * len(A.names)
            v[A.index(name)] = p
            src = A.key_of(tuple(v))
            tgt = differential_target(BiDegree(Degree(src[0], src[1]), src[2]), self.r)
            for key in val.degrees():
                if key != tgt.key():
                    raise ValueError(
                        f"d_{self.r}({k}) has a term in {key}, expected {tgt.key()}"
                    )

    def apply_vec(self, A: MonomialAlgebra, v: Vec) -> dict[Vec, int]:
        hit = self._cache.get(v)
        if hit is not None and self._algebra is A:
            return hit
        plan = self.bind(A)
        raw: dict[Vec, int] = {}
        for i, p, even, odd_prefix, vals in plan:
            e = v[i]
            if not e:
                continue
            q = e // p
            # d(y^q) = sum_j (-1)^{j |y|} y^{q-1} d(y)
            coeff = q if even else (q % 2)
            if not coeff:
                continue
            if odd_prefix and sum(v[j] for j in odd_prefix) % 2:
                coeff = -coeff
            for w, c in vals:
                t = tuple(map(add, v, w))
                raw[t] = raw.get(t, 0) + coeff * c
        out = A.normalize(raw) if raw else {}
        self._cache[v] = out
        return out

    def to_json(self) -> dict:
        return {"r": self.r, "values": {k: v.pretty() for k, v in sorted(self.values.items())}}

    @classmethod
    def from_json(cls, A: MonomialAlgebra, data: Mapping) -> "Differential":
        vals = {str(k): parse_element(A, str(v)) for k, v in data.get("values", {}).items()}
        return cls(int(data["r"]), vals)


def leibniz_extend(d: Differential, m: Monomial | Element, A: MonomialAlgebra | None = None) -> Element:
    """``d_r`` of a monomial (or a sum of monomials) by the signed Leibniz rule.

    The sign is ``(-1)^{a_0}`` with ``a_0`` the trivial-part degree of the
    factors standing to the left, reading generators in algebra order.
    """
    if isinstance(m, Element):
        A = m.algebra
        out: dict[Vec, int] = {}
        for v, c in m.vterms.items():
            for w, cw in d.apply_vec(A, v).items():
                out[w] = out.get(w, 0) + c * cw
        return A.element(out)
    if A is None:
        raise ValueError("an algebra is needed to extend a monomial")
    return A.element(d.apply_vec(A, A.vec(m)))


# -- lattice helpers ---------------------------------------------------------

def _f2_insert(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against an echelon basis keyed by leading bit; insert if new."""
    while v:
        top = v.bit_length() - 1
        piv = basis.get(top)
        if piv is None:
            basis[top] = v
            return v
        v ^= piv
    return 0


def _f2_reduce(basis: dict[int, int], v: int) -> int:
    while v:
        top = v.bit_length() - 1
        piv = basis.get(top)
        if piv is None:
            return v
        v ^= piv
    return 0


@dataclass
class _Sub:
    """Z_r and B_r of one piece."""

    mode: str  # "f2" or "z"
    Z: object
    B: object


@dataclass(frozen=True)
class ClassRecord:
    label: str
    order: int  # 0 for infinite order
    representative: Element
    bidegree: BiDegree


class Page:
    """The E_r page of a spectral sequence, computed lazily per key."""

    def __init__(
        self,
        algebra: MonomialAlgebra,
        window: SSWindow | None = None,
        r: int = 2,
        parent: "Page | None" = None,
        differential: Differential | None = None,
        validate: bool = True,
    ):
        self.algebra = algebra
        self.window = window or SSWindow()
        self.r = r
        self.parent = parent
        self.differential = differential
        self.validate = validate
        self.root: Page = parent.root if parent is not None else self
        self._subs: dict[Key, _Sub] = {}
        self._dmat: dict[Key, list] = {}
        self._nonzero: set[Key] | None = None
        if parent is None:
            self._window_keys: list[Key] | None = None
            self._bases: dict[Key, tuple[Vec, ...]] = {}
            self._indices: dict[Key, dict[Vec, int]] = {}
            self._modes: dict[Key, str] = {}

    def __repr__(self) -> str:
        return f"Page(r={self.r}, algebra={self.algebra!r})"

    # -- E2 data -----------------------------------------------------------
    def basis(self, key: Key) -> tuple[Vec, ...]:
        root = self.root
        b = root._bases.get(key)
        if b is None:
            b = tuple(self.algebra.basis(key[0], key[1], key[2], self.window.exponents)) if key[2] >= 0 else ()
            root._bases[key] = b
            root._indices[key] = {v: i for i, v in enumerate(b)}
            A = self.algebra
            root._modes[key] = "f2" if b and all(A.annihilator_of(v) for v in b) else "z"
        return b

    def window_keys(self) -> list[Key]:
        """Keys of the reporting window with a nonzero E2 piece."""
        root = self.root
        if root._window_keys is None:
            root._window_keys = [k for k in self.window.keys() if self.basis(k)]
        return root._window_keys

    def index(self, key: Key) -> dict[Vec, int]:
        self.basis(key)
        return self.root._indices[key]

    def mode(self, key: Key) -> str:
        self.basis(key)
        return self.root._modes[key]

    def torsion_mask(self, key: Key) -> list[int]:
        A = self.algebra
        return [A.annihilator_of(v) for v in self.basis(key)]

    # -- lattices ------------------------------------------------------------
    def sub(self, key: Key) -> _Sub:
        hit = self._subs.get(key)
        if hit is not None:
            return hit
        if self.parent is None:
            s = self._initial(key)
        elif self.differential is None or self.differential.is_zero:
            s = self.parent.sub(key)
        else:
            s = self._turned(key)
        self._subs[key] = s
        return s

    def _initial(self, key: Key) -> _Sub:
        n = len(self.basis(key))
        if self.mode(key) == "f2":
            return _Sub("f2", {i: 1 << i for i in range(n)}, {})
        tors = self.torsion_mask(key)
        Z = [[int(i == j) for j in range(n)] for i in range(n)]
        B = [[2 * int(i == j) for j in range(n)] for i in range(n) if tors[i]]
        return _Sub("z", Z, B)

    def _images(self, key: Key) -> list:
        """d_r of each basis monomial of ``key`` in the basis of the target key."""
        hit = self._dmat.get(key)
        if hit is not None:
            return hit
        d = self.differential
        A = self.algebra
        tgt = (key[0] - 1, key[1], key[2] + d.r)
        tidx = self.index(tgt)
        f2 = self.mode(tgt) == "f2"
        out = []
        for v in self.basis(key):
            img = d.apply_vec(A, v)
            if f2:
                mask = 0
                for w, c in img.items():
                    j = tidx.get(w)
                    if j is None:
                        raise WindowTooSmall(f"d_{d.r} of {A.mono(v).pretty()} leaves the exponent window")
                    if c % 2:
                        mask ^= 1 << j
                out.append(mask)
            else:
                vec: dict[int, int] = {}
                for w, c in img.items():
                    j = tidx.get(w)
                    if j is None:
                        raise WindowTooSmall(f"d_{d.r} of {A.mono(v).pretty()} leaves the exponent window")
                    vec[j] = vec.get(j, 0) + c
                out.append(vec)
        self._dmat[key] = out
        return out

    @staticmethod
    def _apply(imgs: list, z, src_mode: str, tgt_mode: str, ntgt: int):
        """Image of one vector of the source piece, in the target representation."""
        if tgt_mode == "f2":
            acc = 0
            if src_mode == "f2":
                i = 0
                while z:
                    if z & 1:
                        acc ^= imgs[i]
                    z >>= 1
                    i += 1
            else:
                for i, c in enumerate(z):
                    if c % 2:
                        acc ^= imgs[i]
            return acc
        acc = [0] * ntgt
        coeffs = _as_list(z, len(imgs)) if src_mode == "f2" else z
        for i, c in enumerate(coeffs):
            if c:
                for j, x in imgs[i].items():
                    acc[j] += c * x
        return acc

    def _turned(self, key: Key) -> _Sub:
        P = self.parent
        d = self.differential
        r = d.r
        own = P.sub(key)
        mode = own.mode
        n = len(self.basis(key))
        # kernel part: Z_{r+1}(key)
        tgt = (key[0] - 1, key[1], key[2] + r)
        tgt_sub = P.sub(tgt)
        ntgt = len(self.basis(tgt))
        if n == 0:
            Z = own.Z
        elif ntgt == 0:
            Z = own.Z
        else:
            Z = self._kernel(key, own, tgt_sub, ntgt)
        # image part: B_{r+1}(key)
        src = (key[0] + 1, key[1], key[2] - r)
        B = own.B
        if src[2] >= 0 and n and self.basis(src):
            B = self._image(src, P.sub(src), own, n)
        return _Sub(mode, Z, B)

    def _zrows(self, sub: _Sub) -> list:
        return list(sub.Z.values()) if sub.mode == "f2" else list(sub.Z)

    def _kernel(self, key: Key, own: _Sub, tgt: _Sub, ntgt: int):
        smode, tmode = own.mode, tgt.mode
        zrows = self._zrows(own)
        dm = self._images(key)
        images = [self._apply(dm, z, smode, tmode, ntgt) for z in zrows]
        if self.validate:
            self._check_inside(tgt, images, "cycles", key)
            brows = list(own.B.values()) if smode == "f2" else list(own.B)
            bimgs = [self._apply(dm, z, smode, tmode, ntgt) for z in brows]
            self._check_inside(tgt, bimgs, "boundaries", key, use_b=True)
        if smode == "f2" and tmode == "f2":
            piv: dict[int, tuple[int, int]] = {}
            kern: dict[int, int] = {}
            tb = tgt.B
            for z, img in zip(zrows, images):
                img = _f2_reduce(tb, img)
                while img:
                    top = img.bit_length() - 1
                    hit = piv.get(top)
                    if hit is None:
                        piv[top] = (img, z)
                        break
                    img ^= hit[0]
                    z ^= hit[1]
                    img = _f2_reduce(tb, img)
                if not img:
                    _f2_insert(kern, z)
            return kern
        # integer path
        n = len(self.basis(key))
        zl = [_as_list(z, n) for z in zrows] if smode == "f2" else zrows
        il = [_as_list(x, ntgt) for x in images] if tmode == "f2" else images
        tb = _int_rows(tgt, ntgt, self.torsion_mask(self._tkey(key)))
        k = len(zl)
        lk = left_kernel(il + tb)
        combos = [row[:k] for row in lk]
        vecs = [[sum(c[t] * zl[t][j] for t in range(k)) for j in range(n)] for c in combos]
        if smode == "f2":
            out: dict[int, int] = {}
            for v in vecs:
                _f2_insert(out, _as_mask(v))
            return out
        return hermite_rows(vecs + [row for row in own.B], n)

    def _tkey(self, key: Key) -> Key:
        return (key[0] - 1, key[1], key[2] + self.differential.r)

    def _image(self, src: Key, src_sub: _Sub, own: _Sub, n: int):
        smode, tmode = src_sub.mode, own.mode
        dm = self._images(src)
        images = [self._apply(dm, z, smode, tmode, n) for z in self._zrows(src_sub)]
        if tmode == "f2":
            B = dict(own.B)
            for img in images:
                _f2_insert(B, img)
            return B
        return hermite_rows(list(own.B) + images, n)

    def _check_inside(self, tgt: _Sub, images: list, what: str, key: Key, use_b: bool = False) -> None:
        lat = tgt.B if use_b else tgt.Z
        for img in images:
            if tgt.mode == "f2":
                ok = _f2_reduce(lat, img) == 0
            else:
                ok = _in_lattice(lat, img)
            if not ok:
                raise InconsistentDifferential(
                    f"d_{self.differential.r} sends {what} at {key} outside the expected subgroup"
                )

    # -- queries -------------------------------------------------------------
    def group(self, key: Key) -> FGAbelianGroup:
        if not self.basis(key):
            return FGAbelianGroup.zero()
        s = self.sub(key)
        if s.mode == "f2":
            k = len(s.Z) - len(s.B)
            return FGAbelianGroup(0, (2,) * k)
        free, factors = _quotient(s.Z, s.B)
        return FGAbelianGroup(free, tuple(factors))

    def is_nonzero(self, key: Key) -> bool:
        if not self.basis(key):
            return False
        s = self.sub(key)
        if s.mode == "f2":
            return len(s.Z) > len(s.B)
        return not self.group(key).is_zero

    def vector_of(self, x: Element) -> tuple[Key, list[int]]:
        keys = x.degrees()
        if len(keys) != 1:
            raise ValueError("element is not homogeneous")
        key = keys.pop()
        idx = self.index(key)
        v = [0] * len(idx)
        for w, c in x.vterms.items():
            j = idx.get(w)
            if j is None:
                raise WindowTooSmall(f"{x.pretty()} lies outside the exponent window")
            v[j] += c
        return key, v

    def contains_cycle(self, x: Element) -> bool:
        """Whether ``x`` is a d_s-cycle for every s < r (lies in Z_r)."""
        if x.is_zero():
            return True
        key, v = self.vector_of(x)
        s = self.sub(key)
        if s.mode == "f2":
            return _f2_reduce(s.Z, _as_mask(v)) == 0
        return _in_lattice(s.Z, v)

    def is_boundary(self, x: Element) -> bool:
        """Whether ``x`` lies in B_r (so represents zero on this page)."""
        if x.is_zero():
            return True
        key, v = self.vector_of(x)
        s = self.sub(key)
        if s.mode == "f2":
            return _f2_reduce(s.B, _as_mask(v)) == 0
        return _in_lattice(s.B, v)

    def represents_nonzero(self, x: Element) -> bool:
        return self.contains_cycle(x) and not self.is_boundary(x)

    def classes(self, key: Key) -> list[ClassRecord]:
        """Labeled generators of ``E_r`` at ``key``.

        Representatives avoid monomials that occur in boundaries where
        possible; ties go to the lexicographically first monomial.
        """
        basis = self.basis(key)
        if not basis:
            return []
        A = self.algebra
        s = self.sub(key)
        n = len(basis)
        bidegree = BiDegree(Degree(key[0], key[1]), key[2])
        if s.mode == "f2":
            brows = [_as_list(x, n) for x in s.B.values()]
            zrows = [_as_list(x, n) for x in s.Z.values()]
            support = [any(r[i] % 2 for r in brows) for i in range(n)]
            # pivots are chosen among the least preferred columns first
            order = sorted(range(n), key=lambda i: (not support[i], -i), reverse=False)
            bred = _rref_f2(brows, order)
            reps = []
            for z in zrows:
                z = _reduce_f2(z, bred, order)
                if any(z):
                    reps.append(z)
            reps = _rref_f2(reps, order)
            out = []
            for rep in sorted(reps, key=lambda r: [-x for x in r]):
                el = A.element({basis[i]: 1 for i in range(n) if rep[i]})
                out.append(ClassRecord(el.pretty(), 2, el, bidegree))
            return out
        rel = [coordinates_in(s.Z, b) for b in s.B]
        k = len(s.Z)
        if rel:
            diag, _, right = smith_normal_form(rel)
        else:
            diag, right = [], [[int(i == j) for j in range(k)] for i in range(k)]
        diag = diag + [0] * (k - len(diag))
        inv = _unimodular_inverse(right)
        out = []
        for i in range(k):
            d = diag[i]
            if d == 1 or (d and _three_power(d)):
                continue
            gen = [sum(inv[i][t] * s.Z[t][j] for t in range(k)) for j in range(n)]
            g = [x for x in gen if x]
            if g and g[0] < 0 or (g and all(x < 0 for x in g)):
                gen = [-x for x in gen]
            el = A.element({basis[j]: gen[j] for j in range(n) if gen[j]}, reduce=False)
            out.append(ClassRecord(el.pretty(), abs(d), el, bidegree))
        out.sort(key=lambda c: (c.order != 0, c.label))
        return out

    def turn(self, d: Differential | None) -> "Page":
        return turn_page(self, d)

    def chain(self) -> list["Page"]:
        pages = []
        p: Page | None = self
        while p is not None:
            pages.append(p)
            p = p.parent
        return pages[::-1]

    def fate(self, x: Element) -> dict:
        """Follow an E2 element through the pages ending at this one.

        Returns ``{"status": "permanent" | "supports" | "boundary", ...}``.
        A permanent cycle that is also a boundary reports ``boundary``.
        """
        pages = self.chain()
        for p, nxt in zip(pages, pages[1:]):
            if not p.contains_cycle(x):
                return {"status": "not-a-cycle", "page": p.r}
            d = nxt.differential
            if d is not None and not d.is_zero and not nxt.contains_cycle(x):
                img = leibniz_extend(d, x)
                return {"status": "supports", "r": d.r, "target": img.pretty()}
        for p in pages:
            if p.is_boundary(x):
                # first page on which x is zero
                return {"status": "boundary", "page": p.r}
        return {"status": "permanent"}

    def supports_differential(self, key: Key) -> bool:
        """Whether the differential leading to this page is nonzero on ``key``."""
        d = self.differential
        if self.parent is None or d is None or d.is_zero or not self.basis(key):
            return False
        before, after = self.parent.sub(key), self.sub(key)
        if before.mode == "f2":
            return len(after.Z) < len(before.Z)
        return any(not _in_lattice(after.Z, row) for row in before.Z)


def _three_power(d: int) -> bool:
    d = abs(d)
    while d % 3 == 0:
        d //= 3
    return d == 1


def _unimodular_inverse(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    aug = [list(m[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    h = hermite_rows(aug, 2 * n)
    # Hermite form of [M | I] with M unimodular is [I | M^{-1}]
    return [row[n:] for row in h]


def _as_list(x, n: int) -> list[int]:
    if isinstance(x, int):
        return [(x >> i) & 1 for i in range(n)]
    return list(x)


def _as_mask(v: Sequence[int]) -> int:
    m = 0
    for i, c in enumerate(v):
        if c % 2:
            m |= 1 << i
    return m


def _rref_f2(rows: list[list[int]], order: list[int]) -> list[list[int]]:
    rows = [[x % 2 for x in r] for r in rows]
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in order:
        hit = next((r for r in rows if r[col]), None)
        if hit is None:
            continue
        rows = [r for r in rows if r is not hit]
        rows = [[x ^ y for x, y in zip(r, hit)] if r[col] else r for r in rows]
        out = [[x ^ y for x, y in zip(r, hit)] if r[col] else r for r in out]
        out.append(hit)
        pivots.append(col)
    return out


def _reduce_f2(v: list[int], rref: list[list[int]], order: list[int]) -> list[int]:
    v = [x % 2 for x in v]
    for r in rref:
        col = next(c for c in order if r[c])
        if v[col]:
            v = [x ^ y for x, y in zip(v, r)]
    return v


def _int_rows(sub: _Sub, n: int, tors: list[int]) -> list[list[int]]:
    """B of a piece as integer rows, torsion relations included."""
    if sub.mode == "f2":
        rows = [_as_list(x, n) for x in sub.B.values()]
        rows += [[2 * int(i == j) for j in range(n)] for i in range(n) if tors[i]]
        return rows
    return [list(r) for r in sub.B]


def _in_lattice(rows, v) -> bool:
    if isinstance(v, int):
        raise TypeError("expected an integer vector")
    if not any(v):
        return True
    try:
        coordinates_in(rows, v)
        return True
    except (ValueError, StopIteration):
        return False


def _quotient(Z, B) -> tuple[int, list[int]]:
    from .abelian import lattice_quotient

    return lattice_quotient(Z, B)


def e2_page(A: MonomialAlgebra, window: SSWindow | None = None, validate: bool = True) -> Page:
    return Page(A, window, 2, None, None, validate)


def turn_page(p: Page, d: Differential | None) -> Page:
    """The next page.  ``d`` must be a d_r for ``r == p.r`` or None (zero)."""
    if d is not None and d.r != p.r:
        raise ValueError(f"page E_{p.r} needs a d_{p.r}, got d_{d.r}")
    if d is not None:
        d.validate(p.algebra)
    return Page(p.algebra, p.window, p.r + 1, p, d, p.validate)


@dataclass
class StableResult:
    page: Page
    stabilization_page: int
    unresolved: list[dict]
    nonzero_differentials: list[int]

    @property
    def stable(self) -> bool:
        return not self.unresolved


def _possible_pairs(page: Page, r: int, nonzero: set[Key]) -> list[tuple[Key, Key]]:
    out = []
    for key in nonzero:
        tgt = (key[0] - 1, key[1], key[2] + r)
        if tgt in nonzero:
            out.append((key, tgt))
    return sorted(out)


def _content_page(page: Page) -> Page:
    # pages reached by a zero differential share their data with the parent
    while page.parent is not None and (page.differential is None or page.differential.is_zero):
        page = page.parent
    return page


def _window_nonzero(page: Page) -> set[Key]:
    page = _content_page(page)
    if page._nonzero is None:
        page._nonzero = {key for key in page.window_keys() if page.is_nonzero(key)}
    return page._nonzero


def run_to_stable(
    A: MonomialAlgebra,
    diffs: Sequence[Differential],
    window: SSWindow | None = None,
    r_max: int | None = None,
    validate: bool = True,
) -> StableResult:
    """Apply the given differentials page by page and certify stabilization.

    Between and after the listed differentials every possible ``d_r`` is
    looked for by degree reasons (nonzero source and target inside the
    window).  Possible differentials that were not supplied are reported as
    unresolved, never guessed.
    """
    window = window or SSWindow()
    if r_max is None:
        r_max = window.s_max
    rs = [d.r for d in diffs]
    if rs != sorted(rs) or len(set(rs)) != len(rs):
        raise ValueError("differentials must be sorted by r without repeats")
    by_r = {d.r: d for d in diffs}
    page = e2_page(A, window, validate)
    unresolved: list[dict] = []
    acted: list[int] = []
    last_given = max(rs, default=1)
    r = 2
    while r <= r_max:
        d = by_r.get(r)
        if d is not None:
            nxt = turn_page(page, d)
            if _acts(page, nxt):
                acted.append(r)
            page = nxt
            r += 1
            continue
        if r > last_given:
            break
        nonzero = _window_nonzero(page)
        pairs = _possible_pairs(page, r, nonzero)
        if pairs:
            unresolved.append({"r": r, "pairs": len(pairs), "first": list(pairs[0])})
        page = turn_page(page, None)
        r += 1
    # after the last supplied differential the page is E_infinity iff nothing else can happen
    nonzero = _window_nonzero(page)
    for rr in range(max(r, 2), r_max + 1):
        pairs = _possible_pairs(page, rr, nonzero)
        if pairs:
            unresolved.append({"r": rr, "pairs": len(pairs), "first": list(pairs[0])})
    stab = max(acted, default=1) + 1
    if unresolved:
        stab = max(stab, max(u["r"] for u in unresolved) + 1)
    log.info("stabilized at E_%d (unresolved: %d)", stab, len(unresolved))
    return StableResult(page, stab, unresolved, acted)


def _acts(page: Page, nxt: Page) -> bool:
    """Whether the differential leading to ``nxt`` is nonzero somewhere in the window."""
    return any(nxt.group(key) != page.group(key) for key in page.window_keys())


@dataclass(frozen=True)
class Abutment:
    degree: Degree
    graded: dict[int, FGAbelianGroup]
    assembled: FGAbelianGroup | None
    flag: str | None

    def to_json(self) -> dict:
        return {
            "degree": self.degree.to_json(),
            "graded": {str(s): g.to_json() for s, g in sorted(self.graded.items())},
            "assembled": None if self.assembled is None else self.assembled.to_json(),
            "flag": self.flag,
        }


def abutment(e_inf: Page, d: Degree, s_max: int | None = None) -> Abutment:
    """Associated graded of ``pi_d`` and, when forced, the group itself.

    The group is assembled when at most one cyclic torsion summand occurs
    and no free summand sits in higher filtration than it; otherwise the
    extension is flagged as unresolved.
    """
    s_max = e_inf.window.s_max if s_max is None else s_max
    graded = {}
    for s in range(s_max + 1):
        key = (d.a, d.b, s)
        if e_inf.basis(key):
            g = e_inf.group(key)
            if not g.is_zero:
                graded[s] = g
    tors = [(s, g) for s, g in graded.items() if g.invariant_factors]
    n_tors = sum(len(g.invariant_factors) for _, g in tors)
    total = FGAbelianGroup.zero()
    for g in graded.values():
        total = total + g
    if n_tors == 0:
        return Abutment(d, graded, total, None)
    ts = tors[0][0]
    if n_tors == 1 and not any(g.free_rank for s, g in graded.items() if s > ts):
        return Abutment(d, graded, total, None)
    return Abutment(d, graded, None, "extension unresolved")
