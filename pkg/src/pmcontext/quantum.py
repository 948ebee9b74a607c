"""Exact two-qubit realization of the square and its noise robustness.

All operator algebra happens over complex rationals (numbers a + b*i with
rational a, b): products of the Pauli matrices only ever produce entries in
that field, so observables, projectors, states, traces and the depolarizing
channel stay exact end to end.  Square roots are never taken; noise
thresholds are reported on the squared strength r**2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence, Union

from .correlation import CorrelationPoint, Inequality
from .scenario import (
    Context,
    DeterministicAssignment,
    Role,
    Scenario,
    peres_mermin,
    triple_product_constraints,
)

Scalar = Union[int, Fraction, "GaussianRational"]


class NotBalancedInvolutionError(ValueError):
    """Raised for an operator that is not a traceless square root of identity."""


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero complex rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class Operator4:
    """A 4x4 operator over the complex rationals."""

    entries: tuple[tuple[GaussianRational, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Operator4":
        return cls(tuple(tuple(GaussianRational.of(x) for x in row) for row in rows))

    @classmethod
    def identity(cls) -> "Operator4":
        return cls.from_rows([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    def __add__(self, other: "Operator4") -> "Operator4":
        return Operator4(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )

    def __sub__(self, other: "Operator4") -> "Operator4":
        return Operator4(
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )

    def __matmul__(self, other: "Operator4") -> "Operator4":
        cols = list(zip(*other.entries))
        return Operator4(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), GR_ZERO) for col in cols)
                for row in self.entries
            )
        )

    def scale(self, factor: Scalar) -> "Operator4":
        f = GaussianRational.of(factor)
        return Operator4(tuple(tuple(f * x for x in row) for row in self.entries))

    def trace(self) -> GaussianRational:
        return sum((self.entries[i][i] for i in range(4)), GR_ZERO)

    def dagger(self) -> "Operator4":
        return Operator4(
            tuple(tuple(self.entries[j][i].conjugate() for j in range(4)) for i in range(4))
        )

    def is_hermitian(self) -> bool:
        return self == self.dagger()

    def rank(self) -> int:
        rows = [list(r) for r in self.entries]
        rank = 0
        for col in range(4):
            piv = next((i for i in range(rank, 4) if rows[i][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = rows[rank][col]
            rows[rank] = [x / inv for x in rows[rank]]
            for i in range(4):
                if i != rank and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
            rank += 1
        return rank


PAULI_1 = ((GR_ONE, GR_ZERO), (GR_ZERO, GR_ONE))
PAULI_X = ((GR_ZERO, GR_ONE), (GR_ONE, GR_ZERO))
PAULI_Y = ((GR_ZERO, GR_I), (-GR_I, GR_ZERO))
PAULI_Z = ((GR_ONE, GR_ZERO), (GR_ZERO, -GR_ONE))


def tensor(a, b) -> Operator4:
    """Kronecker product of two 2x2 matrices over the complex rationals."""
    rows = []
    for i in range(2):
        for k in range(2):
            rows.append(tuple(a[i][j] * b[k][l] for j in range(2) for l in range(2)))
    return Operator4(tuple(rows))


def build_pm_square() -> tuple[tuple[Operator4, ...], ...]:
    """The nine two-qubit observables of the square, row by row."""
    return (
        (tensor(PAULI_X, PAULI_1), tensor(PAULI_1, PAULI_X), tensor(PAULI_X, PAULI_X)),
        (tensor(PAULI_1, PAULI_Z), tensor(PAULI_Z, PAULI_1), tensor(PAULI_Z, PAULI_Z)),
        (tensor(PAULI_X, PAULI_Z), tensor(PAULI_Z, PAULI_X), tensor(PAULI_Y, PAULI_Y)),
    )


def projectors(obs: Operator4) -> tuple[Operator4, Operator4]:
    """The rank-2 eigenprojectors (1 +/- obs)/2 of a balanced involution."""
    ident = Operator4.identity()
    if obs @ obs != ident or obs.trace() != GR_ZERO:
        raise NotBalancedInvolutionError("expected a traceless operator squaring to identity")
    half = Fraction(1, 2)
    return (ident + obs).scale(half), (ident - obs).scale(half)


def simulating_projectors(
    context: Context, square: tuple[tuple[Operator4, ...], ...] | None = None
) -> dict[tuple[int, int], Operator4]:
    """The four rank-1 joint eigenprojectors of a compatible triple.

    Outcome (a, b) projects onto the joint eigenspace where the first cell
    reads a, the second reads b, and the third reads parity*a*b.
    """
    square = square or build_pm_square()
    first, second, third = (square[i - 1][j - 1] for (i, j) in context.cells)
    quarter = Fraction(1, 4)
    out = {}
    for a, b in product((1, -1), repeat=2):
        op = Operator4.identity() + first.scale(a) + second.scale(b) + third.scale(
            context.parity * a * b
        )
        out[(a, b)] = op.scale(quarter)
    return out


@dataclass(frozen=True)
class DepolarizingStrength:
    """Probability r of leaving the system untouched (1 - r fully depolarizes)."""

    r: Fraction
    r_squared: Fraction = field(init=False)

    def __post_init__(self):
        r = Fraction(self.r)
        if not 0 <= r <= 1:
            raise ValueError("depolarizing strength must lie in [0, 1]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "r_squared", r * r)

    @classmethod
    def of(cls, value) -> "DepolarizingStrength":
        if isinstance(value, DepolarizingStrength):
            return value
        return cls(Fraction(value))


def depolarize(op: Operator4, strength: DepolarizingStrength, kind: str = "observable-effect") -> Operator4:
    """r*op + (1-r) * trace(op)/4 * identity.

    The formula is identical for effects and states; kind only documents the
    call site.
    """
    if kind not in ("observable-effect", "state"):
        raise ValueError("kind must be 'observable-effect' or 'state'")
    r = strength.r
    mixed = Operator4.identity().scale(op.trace() * Fraction(1, 4))
    return op.scale(r) + mixed.scale(1 - r)


def _cell_correlation(obs: Operator4, r_m: DepolarizingStrength, r_s: DepolarizingStrength) -> Fraction:
    plus, minus = projectors(obs)
    effects = {1: depolarize(plus, r_m, "observable-effect"), -1: depolarize(minus, r_m, "observable-effect")}
    half = Fraction(1, 2)
    states = {1: depolarize(plus.scale(half), r_s, "state"), -1: depolarize(minus.scale(half), r_s, "state")}
    total = Fraction(0)
    for m in (1, -1):
        for s in (1, -1):
            value = (effects[m] @ states[s]).trace()
            if value.im != 0:
                raise ValueError("correlation trace came out complex")
            total += m * s * half * value.re
    return total


def correlations(
    strength, source_strength=None
) -> CorrelationPoint:
    """Born-rule correlations of the nine matched source-measurement pairs
    under depolarizing noise; equal strengths give omega = r**2 in every cell."""
    r_m = DepolarizingStrength.of(strength)
    r_s = r_m if source_strength is None else DepolarizingStrength.of(source_strength)
    square = build_pm_square()
    return CorrelationPoint.from_matrix(
        [[_cell_correlation(square[i][j], r_m, r_s) for j in range(3)] for i in range(3)]
    )


def noise_threshold(ineq: Inequality) -> Fraction | None:
    """Smallest r**2 beyond which the symmetric noisy realization violates the
    inequality, or None when it never does.

    At strength r every correlation equals r**2, so the left side is
    (sum of coefficients) * r**2; violation requires that sum to exceed the
    bound.
    """
    total = ineq.coefficient_sum()
    if total <= ineq.beta:
        return None
    return Fraction(ineq.beta, total)


COMPATIBILITY_IDENTITIES = "compatibility-identities"


def context_product_sum(
    source: Union[str, DeterministicAssignment] = COMPATIBILITY_IDENTITIES,
    scenario: Scenario | None = None,
) -> int:
    """The parity-weighted sum of the six context outcome products.

    Under the scenario's compatibility identities every context product equals
    its parity, so the sum is the number of contexts (6) for any preparation
    whatsoever.  For a raw sign assignment the sum is computed from its actual
    products; it can reach at most 4 on the square, and only by breaking at
    least one compatibility identity.
    """
    scenario = scenario or peres_mermin()
    constraints = triple_product_constraints(Role.MEASUREMENT, scenario)
    if source == COMPATIBILITY_IDENTITIES:
        return sum(parity * parity for _, parity in constraints)
    if not isinstance(source, DeterministicAssignment):
        raise ValueError("source must be a DeterministicAssignment or the identities marker")
    total = 0
    for ctx, parity in constraints:
        prod_signs = 1
        for cell in ctx.cells:
            prod_signs *= source.sign(cell)
        total += parity * prod_signs
    return total
