"""The noncontextual correlation polytope and its facet inequalities.

The polytope is the convex hull of all cellwise products of one measurement
assignment vertex with one source assignment vertex.  Its facet inequalities
come back out of the vertex-to-facet conversion in the form

    sum_ij alpha_ij * omega_ij <= beta

with a primitive integer coefficient matrix alpha and integer bound beta.
For the Peres-Mermin square the 184 facets split into three symmetry classes,
keyed by beta: 24 trivial facets (beta 1) that hold for every logically
possible experiment, 144 of one nontrivial class (beta 3), and 16 of another
(beta 5).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Sequence

from .dualdesc import affine_dimension, facets_to_vertices, remove_redundant_points, vertices_to_facets
from .exactgeom import VRep
from .scenario import Role, Scenario, build_assignment_polytope, peres_mermin, triple_product_constraints
from .symmetry import Orbit, SignedPermutation, close_generators, correlation_symmetry_generators, orbits


class InequalityClass(Enum):
    TRIVIAL = "trivial"
    CLASS_I = "class-1"
    CLASS_II = "class-2"


@dataclass(frozen=True)
class CorrelationPoint:
    """A grid of rational source-measurement correlations, one per cell."""

    omega: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "CorrelationPoint":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in matrix))

    @classmethod
    def from_vector(cls, vec: Sequence) -> "CorrelationPoint":
        vals = [Fraction(x) for x in vec]
        return cls(tuple(tuple(vals[3 * i + j] for j in range(3)) for i in range(3)))

    def as_vector(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.omega for x in row)


@dataclass(frozen=True)
class Inequality:
    """An integer facet inequality sum alpha_ij * omega_ij <= beta."""

    alpha: tuple[tuple[int, ...], ...]
    beta: int
    klass: InequalityClass | None = None

    @classmethod
    def from_matrix(cls, alpha: Sequence[Sequence[int]], beta: int, klass=None) -> "Inequality":
        return cls(tuple(tuple(int(x) for x in row) for row in alpha), int(beta), klass)

    def coefficient_vector(self) -> tuple[int, ...]:
        return tuple(x for row in self.alpha for x in row)

    def coefficient_sum(self) -> int:
        return sum(self.coefficient_vector())

    def with_class(self, klass: InequalityClass) -> "Inequality":
        return Inequality(self.alpha, self.beta, klass)


TRIVIAL_REPRESENTATIVE = Inequality.from_matrix(
    [[-1, 1, 1], [0, 0, 0], [0, 0, 0]], 1, InequalityClass.TRIVIAL
)
CLASS_I_REPRESENTATIVE = Inequality.from_matrix(
    [[-1, 0, 1], [1, 0, 1], [0, -1, 0]], 3, InequalityClass.CLASS_I
)
CLASS_I_MAX_QUANTUM = Inequality.from_matrix(
    [[1, 1, 0], [1, 1, 0], [0, 0, 1]], 3, InequalityClass.CLASS_I
)
CLASS_II_ALL_PLUS = Inequality.from_matrix(
    [[1, 1, 1], [1, 1, 1], [1, 1, 1]], 5, InequalityClass.CLASS_II
)


def pair_vertices(m_vertices: VRep, s_vertices: VRep) -> list[CorrelationPoint]:
    """All cellwise products of a measurement vertex with a source vertex.

    Duplicates are kept; redundancy removal is a separate stage.
    """
    m_points = m_vertices.points()
    s_points = s_vertices.points()
    return [
        CorrelationPoint.from_vector([a * b for a, b in zip(mp, sp)])
        for mp in m_points
        for sp in s_points
    ]


def assignment_vertices(scenario: Scenario | None = None) -> VRep:
    """Vertices of the (measurement = source) assignment polytope."""
    return facets_to_vertices(build_assignment_polytope(Role.MEASUREMENT, scenario))


def correlation_vertices(
    m_vertices: VRep | None = None, s_vertices: VRep | None = None
) -> VRep:
    """Vertices of the correlation polytope: pair, deduplicate, keep extremal."""
    if m_vertices is None:
        m_vertices = assignment_vertices()
    if s_vertices is None:
        s_vertices = m_vertices
    points = [p.as_vector() for p in pair_vertices(m_vertices, s_vertices)]
    return VRep.from_points(remove_redundant_points(points))


def correlation_symmetry_group(facet_rows) -> tuple[SignedPermutation, ...]:
    return close_generators(correlation_symmetry_generators(), facet_rows)


def derive_inequalities(vertices: VRep | None = None) -> list[Inequality]:
    """Facet inequalities of the correlation polytope, classified by orbit.

    The hull must be full-dimensional (checked first) so that the facet count
    is meaningful; each facet row (b, c) becomes alpha = -c, beta = b.
    """
    if vertices is None:
        vertices = correlation_vertices()
    dim = vertices.dimension
    if affine_dimension(vertices.points()) != dim:
        raise ValueError("correlation polytope is not full-dimensional")
    enumeration = vertices_to_facets(vertices)
    if enumeration.equalities:
        raise ValueError("unexpected affine-hull equalities for a full-dimensional hull")
    inequalities = []
    for row in enumeration.facets.rows:
        beta = row.entries[0]
        alpha = tuple(
            tuple(-row.entries[1 + 3 * i + j] for j in range(3)) for i in range(3)
        )
        inequalities.append(Inequality(alpha, beta))
    group = correlation_symmetry_group(enumeration.facets)
    by_vector = {iq.coefficient_vector(): iq for iq in inequalities}
    classified = []
    for orbit in orbits(list(by_vector), group):
        for member in orbit.members:
            iq = by_vector[member]
            classified.append(iq.with_class(_class_for_beta(iq.beta)))
    return sorted(classified, key=lambda iq: (iq.beta, iq.coefficient_vector()))


def _class_for_beta(beta: int) -> InequalityClass | None:
    return {1: InequalityClass.TRIVIAL, 3: InequalityClass.CLASS_I, 5: InequalityClass.CLASS_II}.get(beta)


@dataclass(frozen=True)
class ClassifiedOrbit:
    """One symmetry class of facet inequalities."""

    klass: InequalityClass | None
    beta: int
    representative: Inequality
    members: tuple[Inequality, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def classify_inequalities(
    inequalities: Sequence[Inequality], group: Sequence[SignedPermutation]
) -> list[ClassifiedOrbit]:
    """Partition inequalities into orbits of the symmetry group.

    Only the coefficient matrix transforms; the bound is invariant along an
    orbit (and this is checked via the orbit members' stored bounds).
    """
    by_vector = {iq.coefficient_vector(): iq for iq in inequalities}
    classes = []
    for orbit in orbits(list(by_vector), group):
        members = tuple(
            sorted((by_vector[m] for m in orbit.members), key=lambda iq: iq.coefficient_vector())
        )
        betas = {iq.beta for iq in members}
        if len(betas) != 1:
            raise ValueError("an orbit mixes inequalities with different bounds")
        beta = betas.pop()
        rep = by_vector[orbit.representative]
        classes.append(ClassifiedOrbit(_class_for_beta(beta), beta, rep, members))
    return sorted(classes, key=lambda c: (c.beta, c.representative.coefficient_vector()))


def evaluate(ineq: Inequality, point: CorrelationPoint) -> tuple[Fraction, bool]:
    """Value of the inequality's left side at the point, and whether it exceeds
    the bound."""
    value = sum(
        Fraction(a) * w for arow, wrow in zip(ineq.alpha, point.omega) for a, w in zip(arow, wrow)
    )
    return value, value > ineq.beta


# --- structural descriptions of the three classes --------------------------

def is_trivial_pattern(alpha) -> bool:
    """One full row or column of signs with product -1, zero elsewhere."""
    lines = [[(i, j) for j in range(3)] for i in range(3)]
    lines += [[(i, j) for i in range(3)] for j in range(3)]
    for line in lines:
        on_line = [alpha[i][j] for i, j in line]
        off_line = [alpha[i][j] for i in range(3) for j in range(3) if (i, j) not in line]
        if all(x in (-1, 1) for x in on_line) and not any(off_line):
            if on_line[0] * on_line[1] * on_line[2] == -1:
                return True
    return False


def is_class_i_pattern(alpha) -> bool:
    """A special nonzero cell whose row and column are otherwise zero, the
    complementary 2x2 block all nonzero, five signs of product +1."""
    for si in range(3):
        for sj in range(3):
            if alpha[si][sj] not in (-1, 1):
                continue
            rest_row = [alpha[si][j] for j in range(3) if j != sj]
            rest_col = [alpha[i][sj] for i in range(3) if i != si]
            block = [alpha[i][j] for i in range(3) for j in range(3) if i != si and j != sj]
            if any(rest_row) or any(rest_col):
                continue
            if not all(x in (-1, 1) for x in block):
                continue
            parity = alpha[si][sj]
            for x in block:
                parity *= x
            if parity == 1:
                return True
    return False


def is_class_ii_pattern(alpha) -> bool:
    """All nine cells signed, every row and every column with product +1."""
    if not all(alpha[i][j] in (-1, 1) for i in range(3) for j in range(3)):
        return False
    for i in range(3):
        if alpha[i][0] * alpha[i][1] * alpha[i][2] != 1:
            return False
    for j in range(3):
        if alpha[0][j] * alpha[1][j] * alpha[2][j] != 1:
            return False
    return True


def logically_possible_sign_matrices(scenario: Scenario | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """Sign matrices for the cellwise products s*m consistent with every
    context's product constraint (all products +1 for the square)."""
    scenario = scenario or peres_mermin()
    constraints = triple_product_constraints(Role.CORRELATION, scenario)
    rows, cols = scenario.shape
    out = []
    for bits in product((-1, 1), repeat=rows * cols):
        matrix = tuple(tuple(bits[r * cols + c] for c in range(cols)) for r in range(rows))
        ok = True
        for ctx, parity in constraints:
            prod_signs = 1
            for (i, j) in ctx.cells:
                prod_signs *= matrix[i - 1][j - 1]
            if prod_signs != parity:
                ok = False
                break
        if ok:
            out.append(matrix)
    return out


@dataclass(frozen=True)
class TrivialClassReport:
    logical_vertices: tuple[tuple[tuple[int, ...], ...], ...]
    trivial_bound_holds: bool
    nontrivial_all_violated: bool
    unviolated_nontrivial: tuple[Inequality, ...]


def verify_trivial_class(inequalities: Sequence[Inequality] | None = None) -> TrivialClassReport:
    """Check that the beta=1 facets hold for every logically possible sign
    matrix (so they cannot witness contextuality), while every other facet is
    violated by at least one such matrix (so it genuinely separates)."""
    if inequalities is None:
        inequalities = derive_inequalities()
    logical = logically_possible_sign_matrices()
    points = [CorrelationPoint.from_matrix(m) for m in logical]
    trivial_ok = True
    for iq in inequalities:
        if iq.beta != 1:
            continue
        for pt in points:
            value, violated = evaluate(iq, pt)
            if violated:
                raise ValueError(
                    f"bound-1 facet {iq.alpha} violated by a logically possible sign matrix"
                )
    unviolated = []
    for iq in inequalities:
        if iq.beta == 1:
            continue
        if not any(evaluate(iq, pt)[1] for pt in points):
            unviolated.append(iq)
    return TrivialClassReport(
        logical_vertices=tuple(logical),
        trivial_bound_holds=trivial_ok,
        nontrivial_all_violated=not unviolated,
        unviolated_nontrivial=tuple(unviolated),
    )
