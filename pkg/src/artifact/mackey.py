"""C2-Mackey functors and Bredon (co)homology of sign-representation spheres.

A Mackey functor is stored by its two values and the matrices of
restriction, transfer and the Weyl action, each written in the cyclic
generators of the groups involved (free generators first, then torsion).

The closed formulas for ``S^{k sigma}`` are paired with a cellular
computation (``cellular_homology_sigma_sphere``) that builds the Bredon chain
complex of the standard C2-CW structure and takes homology by Smith normal
form; the two are compared in the test suite.

>>> bredon_homology_sigma_sphere(3, 1).pretty()
'Z/2'
>>> named_mackey("Zstar").res
((2,),)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import FGAbelianGroup, smith_normal_form

__all__ = [
    "MackeyFunctor",
    "named_mackey",
    "bredon_homology_sigma_sphere",
    "bredon_cohomology_sigma_sphere",
    "cellular_homology_sigma_sphere",
    "cellular_cohomology_sigma_sphere",
    "hz_homotopy",
    "homotopy_near_rho",
    "direct_sum",
]

Mat = tuple[tuple[int, ...], ...]

R13 = "Z[1/3]"


def _orders(g: FGAbelianGroup) -> list[int]:
    return [0] * g.free_rank + list(g.invariant_factors)


def _ngens(g: FGAbelianGroup) -> int:
    return g.free_rank + len(g.invariant_factors)


def _mat(rows: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def _mul(a: Mat, b: Mat, inner: int) -> Mat:
    # a: m x inner, b: inner x n ; matrices act on column vectors
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _eye(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _zeros(m: int, n: int) -> Mat:
    return tuple(tuple(0 for _ in range(n)) for _ in range(m))


def _equal_mod(a: Mat, b: Mat, target: FGAbelianGroup) -> bool:
    orders = _orders(target)
    for i, o in enumerate(orders):
        for x, y in zip(a[i] if a else (), b[i] if b else ()):
            diff = x - y
            if o == 0 and diff:
                return False
            if o and diff % o:
                return False
    return True


@dataclass(frozen=True)
class MackeyFunctor:
    """Values at C2/C2 and C2/e with restriction, transfer and Weyl action.

    ``res`` has shape (underlying gens) x (fixed gens), ``tr`` the reverse,
    ``weyl`` is square on the underlying generators.
    """

    fixed: FGAbelianGroup
    underlying: FGAbelianGroup
    res: Mat
    tr: Mat
    weyl: Mat
    name: str = ""

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MackeyFunctor):
            return NotImplemented
        return (
            self.fixed == other.fixed
            and self.underlying == other.underlying
            and self.res == other.res
            and self.tr == other.tr
            and self.weyl == other.weyl
        )

    def __hash__(self) -> int:
        return hash((self.fixed, self.underlying, self.res, self.tr, self.weyl))

    @property
    def is_zero(self) -> bool:
        return self.fixed.is_zero and self.underlying.is_zero

    def axiom_failures(self) -> list[str]:
        """Names of the Mackey identities that fail."""
        nu, nf = _ngens(self.underlying), _ngens(self.fixed)
        out = []
        w2 = _mul(self.weyl, self.weyl, nu)
        if not _equal_mod(w2, _eye(nu), self.underlying):
            out.append("weyl^2 = 1")
        if not _equal_mod(_mul(self.weyl, self.res, nu), self.res, self.underlying):
            out.append("weyl res = res")
        if not _equal_mod(_mul(self.tr, self.weyl, nu), self.tr, self.fixed):
            out.append("tr weyl = tr")
        rt = _mul(self.res, self.tr, nf)
        one_plus = tuple(
            tuple(int(i == j) + self.weyl[i][j] for j in range(nu)) for i in range(nu)
        )
        if not _equal_mod(rt, one_plus, self.underlying):
            out.append("res tr = 1 + weyl")
        return out

    def satisfies_axioms(self) -> bool:
        return not self.axiom_failures()

    def to_json(self) -> dict:
        return {
            "fixed": self.fixed.to_json(),
            "underlying": self.underlying.to_json(),
            "res": [list(r) for r in self.res],
            "tr": [list(r) for r in self.tr],
            "weyl": [list(r) for r in self.weyl],
        }

    def pretty(self) -> str:
        if self.name:
            return self.name
        return f"[{self.fixed.pretty()} | {self.underlying.pretty()}]"


def direct_sum(*ms: MackeyFunctor) -> MackeyFunctor:
    """Sum of copies of one named functor tensored with free or Z/2 scalars.

    Zero summands are dropped.  Mixed names are rejected: the sums that
    occur in slice bands are always isotypic.
    """
    parts = [m for m in ms if not m.is_zero]
    if not parts:
        return zero_mackey(ms[0].fixed.ground if ms else R13)
    names = {m.name for m in parts}
    if len(names) != 1 or "" in names:
        raise ValueError(f"cannot sum Mackey functors of types {sorted(names)}")
    name = names.pop()
    key = {"Z": "Z", "Z*": "Zstar", "Z_-": "Zminus", "G": "G"}.get(name)
    if key is None:
        raise ValueError(f"cannot sum Mackey functors of type {name}")
    ground = parts[0].fixed.ground
    rank = 0
    for m in parts:
        level = m.fixed if key == "G" else m.underlying
        rank += level.free_rank + len(level.invariant_factors)
    if key == "G":
        return named_mackey("G", FGAbelianGroup(0, (2,) * rank, (), ground))
    return named_mackey(key, FGAbelianGroup.free(rank, ground=ground))


def named_mackey(name: str, scalars: FGAbelianGroup | None = None) -> MackeyFunctor:
    """The named functor Z, Zminus, Zstar or G tensored levelwise with ``scalars``."""
    A = scalars if scalars is not None else FGAbelianGroup.free(1, ground=R13)
    n = _ngens(A)
    ground = A.ground
    if name == "Z":
        return MackeyFunctor(A, A, _eye(n), _mat([[2 * x for x in r] for r in _eye(n)]), _eye(n), "Z")
    if name == "Zstar":
        return MackeyFunctor(A, A, _mat([[2 * x for x in r] for r in _eye(n)]), _eye(n), _eye(n), "Z*")
    if name == "Zminus":
        zero = FGAbelianGroup.zero(ground)
        return MackeyFunctor(zero, A, _zeros(n, 0), _zeros(0, n), _mat([[-x for x in r] for r in _eye(n)]), "Z_-")
    if name == "G":
        m = A.free_rank + A.two_rank
        fixed = FGAbelianGroup(0, (2,) * m, (), ground)
        zero = FGAbelianGroup.zero(ground)
        return MackeyFunctor(fixed, zero, _zeros(0, m), _zeros(m, 0), _zeros(0, 0), "G")
    raise ValueError(f"unknown Mackey functor {name!r}")


def zero_mackey(ground: str = R13) -> MackeyFunctor:
    z = FGAbelianGroup.zero(ground)
    return MackeyFunctor(z, z, (), (), (), "0")


# -- Bredon (co)homology of S^{k sigma} ---------------------------------------

def bredon_homology_sigma_sphere(k: int, s: int, ground: str = R13) -> FGAbelianGroup:
    """``H_{k-s}^{C2}(S^{k sigma}; Z)`` at the fixed level, by the case formula."""
    n = 2 * k - s
    if s == 0 and n % 4 == 0:
        return FGAbelianGroup.free(1, ground=ground)
    if 0 < s <= n and (n - s) % 4 == 0:
        return FGAbelianGroup.cyclic(2, ground=ground)
    return FGAbelianGroup.zero(ground)


def bredon_cohomology_sigma_sphere(d: int, k: int, ground: str = R13) -> FGAbelianGroup:
    """``H^k_{C2}(S^{d sigma}; Z)`` at the fixed level, by the case formula."""
    if d % 2 == 0 and k == d:
        return FGAbelianGroup.free(1, ground=ground)
    if k % 2 == 1 and 1 < k <= d:
        return FGAbelianGroup.cyclic(2, ground=ground)
    return FGAbelianGroup.zero(ground)


def _sigma_sphere_boundaries(d: int) -> list[int]:
    """Fixed-level boundary maps ``C_i -> C_{i-1}`` of reduced Bredon chains.

    The cells are one fixed 0-cell and one free cell in each dimension
    1..d; the underlying boundary of the i-cell is ``1 + g`` or ``g - 1``
    according to parity, and the free 1-cell maps to the fixed 0-cell by
    the transfer of the constant functor.
    """
    out = []
    for i in range(1, d + 1):
        if i == 1:
            out.append(2)
        else:
            out.append(2 if i % 2 else 0)
    return out


def _chain_homology(dims: list[int], maps: dict[int, list[list[int]]], i: int) -> tuple[int, list[int]]:
    """Homology at position i of a complex of free modules ``Z^{dims[j]}``.

    ``maps[j]`` is the matrix of ``C_j -> C_{j-1}`` (rows: target coords).
    """
    n = dims[i] if 0 <= i < len(dims) else 0
    if n == 0:
        return 0, []
    out_map = maps.get(i)
    if out_map is None or not out_map:
        rank_out = 0
    else:
        diag = smith_normal_form(out_map)[0]
        rank_out = sum(1 for x in diag if x)
    in_map = maps.get(i + 1)
    if in_map is None or not in_map or not in_map[0]:
        factors: list[int] = []
        rank_in = 0
    else:
        diag = smith_normal_form(in_map)[0]
        nz = [x for x in diag if x]
        rank_in = len(nz)
        factors = [x for x in nz if x > 1]
    free = n - rank_out - rank_in
    return free, factors


def cellular_homology_sigma_sphere(k: int, s: int, ground: str = R13) -> FGAbelianGroup:
    """Same group as ``bredon_homology_sigma_sphere`` from the cellular chains."""
    if k < 0:
        raise ValueError("k must be non-negative")
    deg = k - s
    if deg < 0 or deg > k:
        return FGAbelianGroup.zero(ground)
    dims = [1] * (k + 1)
    bd = _sigma_sphere_boundaries(k)
    maps = {i: [[bd[i - 1]]] for i in range(1, k + 1)}
    free, factors = _chain_homology(dims, maps, deg)
    return FGAbelianGroup(free, tuple(factors), (), ground)


def cellular_cohomology_sigma_sphere(d: int, k: int, ground: str = R13) -> FGAbelianGroup:
    """Same group as ``bredon_cohomology_sigma_sphere`` from the dual cochains.

    For cohomology with constant coefficients the orbit map of the free
    1-cell induces the restriction, which is the identity.
    """
    if k < 0 or k > d:
        return FGAbelianGroup.zero(ground)
    bd = _sigma_sphere_boundaries(d)
    # coboundary C^i -> C^{i+1} is the transpose of d_{i+1}; on the 0-cell
    # the restriction 1 replaces the transfer 2
    cob = [1] + bd[1:]
    out_map = cob[k] if k < d else 0
    in_map = cob[k - 1] if k >= 1 else 0
    free = 1 - (1 if out_map else 0) - (1 if in_map else 0)
    factors = (abs(in_map),) if in_map and abs(in_map) > 1 else ()
    return FGAbelianGroup(max(free, 0), factors, (), ground)


def hz_homotopy(x: int, y: int, ground: str = R13) -> MackeyFunctor:
    """The Mackey functor ``pi_{x + y sigma} HZ``.

    For ``y <= 0`` this is reduced Bredon homology ``H_x(S^{|y| sigma})``, for
    ``y > 0`` reduced cohomology ``H^{-x}(S^{y sigma})``.  The underlying value
    is Z exactly when ``x + y = 0``, with the Weyl group acting by ``(-1)^y``.
    """
    if y <= 0:
        d = -y
        fixed = bredon_homology_sigma_sphere(d, d - x, ground) if 0 <= x <= d else FGAbelianGroup.zero(ground)
    else:
        d = y
        fixed = bredon_cohomology_sigma_sphere(d, -x, ground) if 0 <= -x <= d else FGAbelianGroup.zero(ground)
    top = x + y == 0
    unit = FGAbelianGroup.free(1, ground=ground)
    zero = FGAbelianGroup.zero(ground)
    if not top:
        if fixed.is_zero:
            return zero_mackey(ground)
        if fixed.invariant_factors == (2,) and fixed.free_rank == 0:
            return named_mackey("G", unit)
        raise AssertionError("unexpected group off the top cell")
    sign = -1 if y % 2 else 1
    if fixed.free_rank == 1:
        return named_mackey("Z" if y <= 0 else "Zstar", unit)
    if fixed.is_zero:
        if sign == -1:
            return named_mackey("Zminus", unit)
        raise AssertionError("trivial fixed value with trivial Weyl action")
    # Z/2 on top of Z_-: restriction vanishes, transfer is reduction mod 2
    return MackeyFunctor(fixed, unit, ((0,),), ((1,),), ((-1,),), "Z/2 over Z_-")


def homotopy_near_rho(coefficients: Mapping[int, FGAbelianGroup], k: int, j: int) -> MackeyFunctor:
    """``pi_{k rho + j}`` for j in {-2, -1, 0, 1} from the homotopy of the underlying ring.

    ``coefficients[n]`` is ``pi_n`` of the underlying spectrum; missing
    entries are zero.  The coefficient groups must be free of 2-torsion.
    """
    if j not in (-2, -1, 0, 1):
        raise ValueError("j must be one of -2, -1, 0, 1")
    for n, g in coefficients.items():
        if g.has_two_torsion():
            raise ValueError(f"pi_{n} has 2-torsion; the near-rho table does not apply")

    def coeff(n: int) -> FGAbelianGroup:
        return coefficients.get(n, FGAbelianGroup.zero())

    if j == 1:
        g = coeff(2 * k + 2)
        return zero_mackey() if g.is_zero else named_mackey("G", g)
    if j == 0:
        g = coeff(2 * k)
        return zero_mackey() if g.is_zero else named_mackey("Z", g)
    if j == -1:
        return zero_mackey()
    g = coeff(2 * k - 2)
    return zero_mackey() if g.is_zero else named_mackey("Zminus", g)
