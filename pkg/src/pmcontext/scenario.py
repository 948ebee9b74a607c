"""The operational Peres-Mermin scenario and its assignment polytopes.

A scenario is a grid of binary-outcome procedures together with contexts:
triples of cells whose outcomes multiply to a fixed parity on every run.  The
Peres-Mermin square is the canonical instance (three rows and the first two
columns have parity +1, the third column has parity -1), but any grid of
parity-constrained triples can be described; the polytope construction only
uses the context structure.

For each context with cells (f, s, t) and parity eta, the outcome pair of the
simulating four-outcome procedure forces, for every sign choice (a, b),

    -a <f> - b <s> - eta*a*b <t> <= 1

on the cell expectation values.  These 4 * len(contexts) inequalities are the
complete facet description of the assignment polytope, identical for
measurements and for sources.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .exactgeom import HRep, VectorKind, normalize


class Role(Enum):
    MEASUREMENT = "measurement"
    SOURCE = "source"
    CORRELATION = "correlation"


@dataclass(frozen=True)
class Context:
    """An ordered triple of grid cells whose outcome product is fixed."""

    cells: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    parity: int

    def __post_init__(self):
        if self.parity not in (-1, 1):
            raise ValueError("context parity must be +1 or -1")
        if len(set(self.cells)) != 3:
            raise ValueError("a context needs three distinct cells")


@dataclass(frozen=True)
class Scenario:
    """A grid of binary procedures with parity-constrained compatible triples."""

    name: str
    shape: tuple[int, int]
    contexts: tuple[Context, ...]

    def __post_init__(self):
        rows, cols = self.shape
        for ctx in self.contexts:
            for (i, j) in ctx.cells:
                if not (1 <= i <= rows and 1 <= j <= cols):
                    raise ValueError(f"cell {(i, j)} outside the {rows}x{cols} grid")

    @property
    def num_cells(self) -> int:
        return self.shape[0] * self.shape[1]

    def cell_index(self, cell: tuple[int, int]) -> int:
        """Row-major flattening of 1-based (row, column) positions."""
        i, j = cell
        return (i - 1) * self.shape[1] + (j - 1)


def peres_mermin() -> Scenario:
    """The 3x3 square: rows and columns are contexts, column 3 has parity -1."""
    contexts = []
    for i in (1, 2, 3):
        contexts.append(Context(((i, 1), (i, 2), (i, 3)), +1))
    for j in (1, 2, 3):
        contexts.append(Context(((1, j), (2, j), (3, j)), +1 if j < 3 else -1))
    return Scenario("peres-mermin", (3, 3), tuple(contexts))


def build_assignment_polytope(role: Role, scenario: Scenario | None = None) -> HRep:
    """Facet inequalities of the noncontextual assignment polytope.

    The construction is the same for measurements and sources; the role
    argument documents which device the coordinates refer to.
    """
    if role not in (Role.MEASUREMENT, Role.SOURCE):
        raise ValueError("assignment polytopes exist for measurements and sources")
    scenario = scenario or peres_mermin()
    n = scenario.num_cells
    rows = []
    for ctx in scenario.contexts:
        f, s, t = (scenario.cell_index(c) for c in ctx.cells)
        for a, b in product((-1, 1), repeat=2):
            coeffs = [0] * (n + 1)
            coeffs[0] = 1
            coeffs[1 + f] = a
            coeffs[1 + s] = b
            coeffs[1 + t] = ctx.parity * a * b
            rows.append(normalize(coeffs, VectorKind.INEQUALITY))
    return HRep.from_rows(rows)


@dataclass(frozen=True)
class AssignmentPoint:
    """A grid of rational expectation values, one per cell."""

    values: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "AssignmentPoint":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in matrix))

    def as_vector(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.values for x in row)


@dataclass(frozen=True)
class DeterministicAssignment:
    """A grid of outcome signs, one per cell."""

    signs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.signs:
            for x in row:
                if x not in (-1, 1):
                    raise ValueError("deterministic assignments take values in {-1, +1}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "DeterministicAssignment":
        return cls(tuple(tuple(int(x) for x in row) for row in matrix))

    def sign(self, cell: tuple[int, int]) -> int:
        return self.signs[cell[0] - 1][cell[1] - 1]


def all_deterministic_assignments(scenario: Scenario | None = None) -> Iterable[DeterministicAssignment]:
    """Every sign assignment over the grid (2**cells of them)."""
    scenario = scenario or peres_mermin()
    rows, cols = scenario.shape
    for bits in product((-1, 1), repeat=rows * cols):
        matrix = tuple(tuple(bits[r * cols + c] for c in range(cols)) for r in range(rows))
        yield DeterministicAssignment(matrix)


def check_deterministic_assignment(
    assignment: DeterministicAssignment, scenario: Scenario | None = None
) -> list[Context]:
    """Contexts whose outcome-product parity the assignment breaks."""
    scenario = scenario or peres_mermin()
    violated = []
    for ctx in scenario.contexts:
        prod_signs = 1
        for cell in ctx.cells:
            prod_signs *= assignment.sign(cell)
        if prod_signs != ctx.parity:
            violated.append(ctx)
    return violated


def triple_product_constraints(
    role: Role, scenario: Scenario | None = None
) -> list[tuple[Context, int]]:
    """The fixed outcome product of each context, per device role.

    Measurement and source outcomes inherit the scenario parities directly.
    For the cellwise product variables s*m the two parities multiply, so every
    context product is +1.
    """
    scenario = scenario or peres_mermin()
    if role is Role.CORRELATION:
        return [(ctx, ctx.parity * ctx.parity) for ctx in scenario.contexts]
    return [(ctx, ctx.parity) for ctx in scenario.contexts]
