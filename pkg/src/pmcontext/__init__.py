"""Exact polyhedral analysis of the operational Peres-Mermin scenario."""

from .exactgeom import (
    DimensionMismatchError,
    HomogeneousVector,
    HRep,
    VectorKind,
    VRep,
    ZeroVectorError,
    normalize,
    pair,
)
from .dualdesc import (
    EmptyPolytopeError,
    FacetEnumeration,
    UnboundedError,
    affine_dimension,
    facets_to_vertices,
    remove_redundant_points,
    roundtrip_check,
    vertices_to_facets,
)
from .scenario import (
    AssignmentPoint,
    Context,
    DeterministicAssignment,
    Role,
    Scenario,
    build_assignment_polytope,
    check_deterministic_assignment,
    peres_mermin,
    triple_product_constraints,
)
from .symmetry import (
    NotASymmetryError,
    NotClosedError,
    Orbit,
    SignedPermutation,
    SymmetryElement,
    assignment_symmetry_generators,
    close_generators,
    correlation_symmetry_generators,
    enumerate_relabelings,
    orbits,
)
from .correlation import (
    CLASS_I_MAX_QUANTUM,
    CLASS_I_REPRESENTATIVE,
    CLASS_II_ALL_PLUS,
    TRIVIAL_REPRESENTATIVE,
    CorrelationPoint,
    Inequality,
    InequalityClass,
    correlation_vertices,
    derive_inequalities,
    evaluate,
    pair_vertices,
    verify_trivial_class,
)
from .quantum import (
    COMPATIBILITY_IDENTITIES,
    DepolarizingStrength,
    GaussianRational,
    NotBalancedInvolutionError,
    Operator4,
    build_pm_square,
    context_product_sum,
    correlations,
    depolarize,
    noise_threshold,
    projectors,
    simulating_projectors,
)

__version__ = "0.1.0"
