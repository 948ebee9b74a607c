"""Exact integer-normalized homogeneous vectors and polytope representations.

Every point and every inequality is stored as a primitive integer vector of
length d+1.  An inequality vector h = (c0, c1, ..., cd) means

    0 <= c0 + c1*x1 + ... + cd*xd,

and a point vector v = (v0, v1, ..., vd) with v0 > 0 means the point
(v1/v0, ..., vd/v0).  With this convention the satisfaction test is just the
sign of an integer dot product, and two descriptions of the same polytope
compare equal bit for bit after canonical sorting.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class ZeroVectorError(ValueError):
    """Raised when an all-zero vector is offered as an inequality or direction."""


class DimensionMismatchError(ValueError):
    """Raised when two objects of different dimension are combined."""


class VectorKind(Enum):
    INEQUALITY = "inequality"
    POINT = "point"


@dataclass(frozen=True, order=True)
class HomogeneousVector:
    """A primitive integer vector with its role (inequality or point) attached.

    Invariants: entries have gcd 1, the vector is nonzero, and a point has a
    strictly positive leading entry.
    """

    entries: tuple[int, ...]
    kind: VectorKind

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValueError("homogeneous vectors need at least two entries")
        if not any(self.entries):
            raise ZeroVectorError("all-zero homogeneous vector")
        g = 0
        for e in self.entries:
            g = gcd(g, abs(e))
        if g != 1:
            raise ValueError(f"entries {self.entries} are not primitive (gcd {g})")
        if self.kind is VectorKind.POINT and self.entries[0] <= 0:
            raise ValueError("a point vector needs a positive leading entry")

    @property
    def dimension(self) -> int:
        return len(self.entries) - 1

    @property
    def leading(self) -> int:
        return self.entries[0]

    @property
    def coords(self) -> tuple[int, ...]:
        return self.entries[1:]

    def as_fractions(self) -> tuple[Fraction, ...]:
        """Dehomogenized coordinates; only meaningful for points."""
        if self.kind is not VectorKind.POINT:
            raise ValueError("only points dehomogenize to coordinates")
        v0 = self.entries[0]
        return tuple(Fraction(e, v0) for e in self.entries[1:])


def _primitive(entries: Iterable[int]) -> tuple[int, ...]:
    entries = tuple(entries)
    g = 0
    for e in entries:
        g = gcd(g, abs(e))
    if g == 0:
        raise ZeroVectorError("all-zero vector cannot be normalized")
    return tuple(e // g for e in entries)


def from_integer_entries(entries: Sequence[int], kind: VectorKind) -> HomogeneousVector:
    """Build a vector from raw integer entries, dividing out the gcd.

    For points the leading entry must already be positive (a ray with a
    nonpositive leading entry is not an affine point).
    """
    prim = _primitive(entries)
    if kind is VectorKind.POINT and prim[0] <= 0:
        raise ValueError(f"{entries}: not a point, leading entry must be positive")
    return HomogeneousVector(prim, kind)


def normalize(raw: Sequence[Scalar], kind: VectorKind) -> HomogeneousVector:
    """Normalize rational input to a primitive integer homogeneous vector.

    For kind=INEQUALITY the input is the (d+1)-entry coefficient vector
    (c0, ..., cd) of 0 <= c0 + sum ci*xi.  For kind=POINT the input is the
    point (x1, ..., xd) itself, which gets homogenized with leading entry 1.
    Scaling is by a positive rational only, so the inequality's orientation
    is preserved.
    """
    values = [Fraction(x) for x in raw]
    if kind is VectorKind.POINT:
        values = [Fraction(1)] + values
    elif len(values) < 2:
        raise ValueError("an inequality needs a constant term and a coefficient")
    if not any(values):
        raise ZeroVectorError("all-zero inequality")
    denom = lcm(*(v.denominator for v in values))
    return from_integer_entries([int(v * denom) for v in values], kind)


def pair(h: HomogeneousVector, v: HomogeneousVector) -> int:
    """Exact dot product h . v; >= 0 means v satisfies h, == 0 means incidence."""
    if h.kind is not VectorKind.INEQUALITY or v.kind is not VectorKind.POINT:
        raise ValueError("pair() expects an inequality on the left and a point on the right")
    if len(h.entries) != len(v.entries):
        raise DimensionMismatchError(
            f"inequality has dimension {h.dimension}, point has dimension {v.dimension}"
        )
    return sum(a * b for a, b in zip(h.entries, v.entries))


def _canonical_rows(
    rows: Iterable[HomogeneousVector], kind: VectorKind
) -> tuple[HomogeneousVector, ...]:
    rows = tuple(rows)
    for r in rows:
        if r.kind is not kind:
            raise ValueError(f"expected only {kind.value} rows")
    if rows:
        dim = rows[0].dimension
        for r in rows:
            if r.dimension != dim:
                raise DimensionMismatchError("rows of mixed dimension")
    return tuple(sorted(set(rows), key=lambda r: r.entries))


@dataclass(frozen=True)
class HRep:
    """Halfspace description: canonically sorted, deduplicated inequality rows."""

    rows: tuple[HomogeneousVector, ...]
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "rows", _canonical_rows(self.rows, VectorKind.INEQUALITY))
        if self.rows and self.rows[0].dimension != self.dimension:
            raise DimensionMismatchError("rows do not match the declared dimension")

    @classmethod
    def from_rows(cls, rows: Iterable[HomogeneousVector]) -> "HRep":
        rows = tuple(rows)
        if not rows:
            raise ValueError("an H-rep needs at least one row")
        return cls(rows, rows[0].dimension)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class VRep:
    """Vertex description: canonically sorted, deduplicated point rows."""

    rows: tuple[HomogeneousVector, ...]
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "rows", _canonical_rows(self.rows, VectorKind.POINT))
        if self.rows and self.rows[0].dimension != self.dimension:
            raise DimensionMismatchError("rows do not match the declared dimension")

    @classmethod
    def from_rows(cls, rows: Iterable[HomogeneousVector]) -> "VRep":
        rows = tuple(rows)
        if not rows:
            raise ValueError("a V-rep needs at least one row")
        return cls(rows, rows[0].dimension)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[Scalar]]) -> "VRep":
        return cls.from_rows([normalize(p, VectorKind.POINT) for p in points])

    def points(self) -> list[tuple[Fraction, ...]]:
        return [r.as_fractions() for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)
