"""Exact rational simplex with Bland's rule.

Two entry points cover everything the package needs:

* in_cone     -- is a vector a nonnegative combination of given generators?
                 The answer comes with an exact certificate either way: the
                 combination weights, or a Farkas functional separating the
                 target from the cone.
* lp_maximize -- maximize a linear functional over {x : 0 <= b + A x} given
                 as an HRep.

Bland's rule makes every pivot choice deterministic and rules out cycling,
so termination is guaranteed; all arithmetic is over Fraction.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactgeom import HRep

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(T, cost, basis, leave, enter):
    piv = T[leave][enter]
    T[leave] = [x / piv for x in T[leave]]
    row = T[leave]
    for i in range(len(T)):
        if i != leave and T[i][enter]:
            f = T[i][enter]
            T[i] = [x - f * y for x, y in zip(T[i], row)]
    if cost[enter]:
        f = cost[enter]
        cost[:] = [x - f * y for x, y in zip(cost, row)]
    basis[leave] = enter


def _bland_min(T, cost, basis, ncols):
    """Run Bland-rule pivots to optimality. Returns "optimal" or "unbounded"."""
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(len(T)):
            t = T[i][enter]
            if t > 0:
                ratio = T[i][-1] / t
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(T, cost, basis, leave, enter)


def _phase1(A: list[list[Fraction]], b: list[Fraction]):
    """Min sum of artificials for {Ax = b, x >= 0}; b must be >= 0.

    Returns (objective, T, basis, y): objective == 0 means feasible, in which
    case (T, basis) is a feasible tableau whose columns are the n structural
    columns, the m artificial columns, and the rhs.  y is the vector of
    simplex multipliers; when objective > 0 it satisfies y.A_j <= 0 for every
    column and y.b == objective, i.e. it is a Farkas certificate.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    T = [A[i] + [(_ONE if j == i else _ZERO) for j in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    cost = [-sum(T[i][j] for i in range(m)) for j in range(n)]
    cost += [_ZERO] * m
    cost.append(-sum(b))  # running negative of the objective value
    status = _bland_min(T, cost, basis, n + m)
    if status != "optimal":  # the phase-1 objective is bounded below by zero
        raise RuntimeError("phase-1 simplex lost boundedness")
    objective = -cost[-1]
    y = [_ONE - cost[n + i] for i in range(m)]
    return objective, T, basis, y


@dataclass(frozen=True)
class ConeMembership:
    """Outcome of an exact cone-membership test.

    When inside, weights gives a nonnegative combination of the generators
    that reproduces the target.  When outside, certificate is a functional y
    with y.target > 0 and y.generator <= 0 for every generator.
    """

    inside: bool
    weights: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None


def in_cone(target: Sequence, generators: Sequence[Sequence]) -> ConeMembership:
    """Decide target in cone(generators) exactly, with a certificate."""
    m = len(target)
    gens = list(generators)
    A = []
    b = []
    flip = []
    for i in range(m):
        row = [Fraction(g[i]) for g in gens]
        bi = Fraction(target[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
            flip.append(-1)
        else:
            flip.append(1)
        A.append(row)
        b.append(bi)
    objective, T, basis, y = _phase1(A, b)
    n = len(gens)
    if objective == 0:
        x = [_ZERO] * n
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = T[i][-1]
        return ConeMembership(True, tuple(x), None)
    cert = tuple(fi * yi for fi, yi in zip(flip, y))
    return ConeMembership(False, None, cert)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    optimum: Fraction | None
    point: tuple[Fraction, ...] | None


def lp_maximize(objective: Sequence, hrep: HRep) -> LPResult:
    """Maximize objective . x over the polyhedron {x : 0 <= b + A x}."""
    d = hrep.dimension
    obj = [Fraction(v) for v in objective]
    if len(obj) != d:
        raise ValueError(f"objective has {len(obj)} entries, polytope has dimension {d}")
    # b_i + a_i.x >= 0 becomes -a_i.x + s_i = b_i with x = u - v, u, v, s >= 0.
    m = len(hrep.rows)
    n = 2 * d + m
    A = []
    b = []
    for i, hrow in enumerate(hrep.rows):
        a = hrow.entries[1:]
        r = [Fraction(-a[j]) for j in range(d)] + [Fraction(a[j]) for j in range(d)]
        r += [(_ONE if j == i else _ZERO) for j in range(m)]
        bi = Fraction(hrow.entries[0])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        A.append(r)
        b.append(bi)
    feasibility, T, basis, _ = _phase1(A, b)
    if feasibility != 0:
        return LPResult("infeasible", None, None)
    # Drive leftover artificials out of the basis, dropping redundant rows.
    keep = []
    for i in range(len(T)):
        if basis[i] < n:
            keep.append(i)
            continue
        enter = next((j for j in range(n) if T[i][j]), None)
        if enter is None:
            continue  # all-zero structural row: redundant constraint
        dummy = [_ZERO] * len(T[0])
        _pivot(T, dummy, basis, i, enter)
        keep.append(i)
    T = [[T[i][j] for j in range(n)] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # Phase 2: minimize -objective.(u - v).
    c = [-o for o in obj] + list(obj) + [_ZERO] * m
    cost = list(c) + [_ZERO]
    for i, bi in enumerate(basis):
        if c[bi]:
            f = c[bi]
            cost = [x - f * y for x, y in zip(cost, T[i])]
    status = _bland_min(T, cost, basis, n)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    xs = [_ZERO] * n
    for i, bi in enumerate(basis):
        xs[bi] = T[i][-1]
    point = tuple(xs[j] - xs[d + j] for j in range(d))
    value = sum(o * p for o, p in zip(obj, point))
    return LPResult("optimal", value, point)
