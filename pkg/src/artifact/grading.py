"""RO(C2) degrees and the bidegrees of RO(C2)-graded spectral sequences.

A degree ``a + b*sigma`` is stored in the basis {1, sigma}.  The regular
representation is ``rho = 1 + sigma``.

>>> RHO + SIGMA
Degree(a=1, b=2)
>>> differential_target(BiDegree(Degree(2, -2), 0), 3)
BiDegree(degree=Degree(a=1, b=-2), filtration=3)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Degree",
    "BiDegree",
    "RHO",
    "SIGMA",
    "ONE",
    "ZERO",
    "regular_multiple",
    "tri_to_bidegree",
    "differential_target",
]


@dataclass(frozen=True, order=True)
class Degree:
    a: int
    b: int

    def __add__(self, other: "Degree") -> "Degree":
        return Degree(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Degree") -> "Degree":
        return Degree(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Degree":
        return Degree(-self.a, -self.b)

    def __mul__(self, k: int) -> "Degree":
        return Degree(k * self.a, k * self.b)

    __rmul__ = __mul__

    @property
    def underlying_dimension(self) -> int:
        return self.a + self.b

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Degree":
        if len(data) != 2:
            raise ValueError(f"degree must be a pair [a, b], got {data!r}")
        return cls(int(data[0]), int(data[1]))

    def pretty(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == self.b:
            return "rho" if self.a == 1 else f"{self.a}rho"
        s = "" if self.a == 0 else str(self.a)
        coeff = {1: "", -1: "-"}.get(self.b, str(self.b))
        sign = "+" if (self.b > 0 and s) else ""
        return f"{s}{sign}{coeff}sigma"


ZERO = Degree(0, 0)
ONE = Degree(1, 0)
SIGMA = Degree(0, 1)
RHO = Degree(1, 1)


@dataclass(frozen=True, order=True)
class BiDegree:
    degree: Degree
    filtration: int

    @property
    def stem(self) -> int:
        # integer chart coordinate; only meaningful when degree.b == 0
        return self.degree.a + self.degree.b

    def key(self) -> tuple[int, int, int]:
        return (self.degree.a, self.degree.b, self.filtration)


def regular_multiple(k: int) -> Degree:
    return Degree(k, k)


def tri_to_bidegree(r: int, s: int, t: int) -> BiDegree:
    """Bidegree ``((t - r) + r*sigma, s)`` of the trigraded E2-term."""
    return BiDegree(Degree(t - r, r), s)


def differential_target(src: BiDegree, r: int) -> BiDegree:
    if r < 2:
        raise ValueError("differentials start at r = 2")
    return BiDegree(src.degree - ONE, src.filtration + r)
