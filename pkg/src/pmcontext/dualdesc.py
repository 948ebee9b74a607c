"""Representation conversion between facets and vertices, in exact arithmetic.

Both directions reduce to one cone problem: the extreme rays of
{v : h . v >= 0 for every row h}.  Vertex enumeration feeds the facet rows in
directly; facet enumeration feeds the vertex rows in (the two tasks are the
same computation with the roles of the matrices swapped).  The conversion is
the incremental double description method: insert one inequality at a time,
keep the extreme rays of the cone seen so far, and combine adjacent
positive/negative ray pairs on each new hyperplane.  Adjacency is decided
combinatorially on exact incidence sets.

Redundancy removal (filtering a point cloud down to the hull's vertices) is
done point by point with the exact LP in simplex.in_cone, and every
keep/discard decision is certified: discarded points get explicit convex
weights over the survivors, survivors get a separating hyperplane.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .exactgeom import (
    HomogeneousVector,
    HRep,
    VectorKind,
    VRep,
    from_integer_entries,
    pair,
)
from .simplex import in_cone

_REORDER_EVERY = 8  # insertion-order heuristic refresh interval


class EmptyPolytopeError(ValueError):
    """Raised when an H-rep turns out to describe the empty set."""


class UnboundedError(ValueError):
    """Raised when an H-rep admits a recession direction (not a polytope)."""


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    return tuple(x // g for x in vec)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _incidence_mask(vec, rows, row_indices):
    mask = 0
    for pos, ri in enumerate(row_indices):
        if _dot(rows[ri], vec) == 0:
            mask |= 1 << pos
    return mask


def dd_cone(rows: Sequence[tuple[int, ...]], dim: int):
    """Extreme rays of {v in Z^dim : row . v >= 0 for all rows}.

    Returns (lines, rays): a basis of the lineality space and the extreme rays
    modulo that space, all as primitive integer tuples.
    """
    lines = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], int]] = []  # (vector, incidence bitmask)
    processed: list[int] = []
    remaining = list(range(len(rows)))
    tick = 0
    while remaining:
        if tick % _REORDER_EVERY == 0 and rays:
            incident = {
                idx: sum(1 for v, _ in rays if _dot(rows[idx], v) == 0) for idx in remaining
            }
            remaining.sort(key=lambda idx: (incident[idx], idx))
        tick += 1
        idx = remaining.pop(0)
        h = rows[idx]
        bit = 1 << len(processed)
        split = next((l for l in lines if _dot(h, l) != 0), None)
        if split is not None:
            d0 = _dot(h, split)
            if d0 < 0:
                split = tuple(-x for x in split)
                d0 = -d0
            new_lines = []
            for l in lines:
                dl = _dot(h, l)
                if dl == 0:
                    if l != split and tuple(-x for x in l) != split:
                        new_lines.append(l)
                elif l != split and tuple(-x for x in l) != split:
                    new_lines.append(_primitive(tuple(d0 * a - dl * b for a, b in zip(l, split))))
            lines = new_lines
            projected = {}
            for v, mask in rays:
                dv = _dot(h, v)
                if dv == 0:
                    projected.setdefault(v, mask | bit)
                else:
                    proj = _primitive(tuple(d0 * a - dv * b for a, b in zip(v, split)))
                    projected.setdefault(proj, mask | bit)
            # the consumed line becomes a ray; lines are incident to every
            # processed row, so its mask is full
            rays = list(projected.items())
            rays.append((split, bit - 1))
            processed.append(idx)
            continue
        plus, zero, minus = [], [], []
        for pos, (v, mask) in enumerate(rays):
            dv = _dot(h, v)
            if dv > 0:
                plus.append((pos, v, mask, dv))
            elif dv == 0:
                zero.append((v, mask | bit))
            else:
                minus.append((pos, v, mask, dv))
        if not minus:
            rays = [(v, mask) for _, v, mask, _ in plus] + zero
            processed.append(idx)
            continue
        new_rays = [(v, mask) for _, v, mask, _ in plus] + zero
        min_tight = max(0, dim - len(lines) - 2)
        seen = {v for v, _ in new_rays}
        for pp, vp, zp, dp in plus:
            for pn, vn, zn, dn in minus:
                common = zp & zn
                if common.bit_count() < min_tight:
                    continue
                adjacent = True
                for po, (_, zo) in enumerate(rays):
                    if po == pp or po == pn:
                        continue
                    if (common & zo) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = _primitive(tuple(dp * a - dn * b for a, b in zip(vn, vp)))
                if w is None or w in seen:
                    continue
                seen.add(w)
                # incidence is recomputed from actual dot products: a combined
                # ray can be tight on rows where neither parent was
                new_rays.append((w, _incidence_mask(w, rows, processed) | bit))
        rays = new_rays
        processed.append(idx)
    return lines, [v for v, _ in rays]


def facets_to_vertices(h: HRep) -> VRep:
    """Enumerate the vertices of the polytope {x : 0 <= b + A x}."""
    rows = [r.entries for r in h.rows]
    lines, rays = dd_cone(rows, h.dimension + 1)
    vertex_rows = [r for r in rays if r[0] > 0]
    if not vertex_rows:
        raise EmptyPolytopeError("the inequalities admit no point")
    if lines or any(r[0] == 0 for r in rays):
        raise UnboundedError("the inequalities admit a recession direction")
    return VRep.from_rows(
        [from_integer_entries(r, VectorKind.POINT) for r in vertex_rows]
    )


@dataclass(frozen=True)
class FacetEnumeration:
    """Facets of a convex hull plus, when the hull is not full-dimensional,
    the affine-hull equalities (rows (c0, c) meaning c0 + c . x = 0)."""

    facets: HRep
    equalities: tuple[HomogeneousVector, ...]


def _equality_canonical(entries) -> HomogeneousVector:
    prim = _primitive(entries)
    lead = next(x for x in prim if x)
    if lead < 0:
        prim = tuple(-x for x in prim)
    return HomogeneousVector(prim, VectorKind.INEQUALITY)


def _facets_full_dimensional(v: VRep) -> HRep:
    rows = [r.entries for r in v.rows]
    lines, rays = dd_cone(rows, v.dimension + 1)
    if lines:
        raise ValueError("input was not full-dimensional after all")
    return HRep.from_rows(
        [from_integer_entries(r, VectorKind.INEQUALITY) for r in rays]
    )


def vertices_to_facets(v: VRep) -> FacetEnumeration:
    """Facets of conv(v); equalities are split out for deficient hulls."""
    points = v.points()
    d = v.dimension
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(d)] for p in points[1:]]
    reduced, pivots = linalg.rref(diffs) if diffs else ([], [])
    k = len(pivots)
    if k == d:
        return FacetEnumeration(_facets_full_dimensional(v), ())
    # Affine-hull equalities: each nullspace direction u of the difference
    # space gives u . x = u . base.
    normals = linalg.nullspace(reduced[:k] if k else [[Fraction(0)] * d])
    equalities = []
    for u in normals:
        c0 = -sum(ui * bi for ui, bi in zip(u, base))
        equalities.append(_equality_canonical(_fraction_row_to_int([c0] + list(u))))
    if k == 0:
        return FacetEnumeration(HRep(tuple(), d), tuple(sorted(equalities, key=lambda e: e.entries)))
    # Chart the affine hull: x = base + B t with B the pivot-column difference
    # basis; convert points to t-coordinates, enumerate facets there, and lift
    # each facet functional back through the chart.
    basis = [diffs[r] for r in _independent_rows(diffs, k)]
    gram = [[sum(a * b for a, b in zip(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    chart_points = []
    for p in points:
        rhs = [sum((p[c] - base[c]) * basis[i][c] for c in range(d)) for i in range(k)]
        t = linalg.solve([row[:] for row in gram], rhs)
        chart_points.append(t)
    chart_v = VRep.from_points(chart_points)
    chart_facets = _facets_full_dimensional(chart_v)
    lifted = []
    for row in chart_facets.rows:
        c0 = Fraction(row.entries[0])
        c = [Fraction(x) for x in row.entries[1:]]
        # t(x) = gram^-1 B (x - base), so c . t = w . (x - base) with
        # w = B^T gram^-1 c
        g_inv_c = linalg.solve([r[:] for r in gram], c)
        w = [sum(g_inv_c[i] * basis[i][j] for i in range(k)) for j in range(d)]
        const = c0 - sum(wj * bj for wj, bj in zip(w, base))
        lifted.append(
            from_integer_entries(_fraction_row_to_int([const] + w), VectorKind.INEQUALITY)
        )
    return FacetEnumeration(
        HRep.from_rows(lifted), tuple(sorted(equalities, key=lambda e: e.entries))
    )


def _independent_rows(rows, target_rank):
    picked = []
    chosen = []
    for i, r in enumerate(rows):
        trial = chosen + [r]
        if linalg.rank(trial) > len(chosen):
            picked.append(i)
            chosen = trial
            if len(picked) == target_rank:
                break
    return picked


def _fraction_row_to_int(values):
    fracs = [Fraction(x) for x in values]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return [int(f * denom) for f in fracs]


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Rank of the difference vectors from the first point."""
    pts = [list(map(Fraction, p)) for p in points]
    if not pts:
        raise ValueError("affine dimension of an empty point set is undefined")
    base = pts[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in pts[1:]]
    return linalg.rank(diffs) if diffs else 0


def remove_redundant_points(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Keep exactly the convex-hull vertices of the input point cloud.

    Hull vertices are discovered incrementally: a point inside the hull found
    so far is discarded with its convex weights recorded; otherwise the
    infeasibility certificate supplies a direction, and the extreme input
    point in that direction (lexicographic tie-break, hence a genuine hull
    vertex) joins the hull.  Afterwards every discard's weights are
    re-checked, and every survivor gets a separating hyperplane built from
    the facets incident to it.
    """
    unique = sorted({tuple(Fraction(x) for x in p) for p in points})
    if len(unique) <= 1:
        return list(unique)
    hull: list[tuple[Fraction, ...]] = []
    hull_set = set()
    hull_rows: list[tuple[Fraction, ...]] = []
    weights_of = {}
    for p in unique:
        target = (Fraction(1),) + p
        while p not in hull_set:
            result = in_cone(target, hull_rows)
            if result.inside:
                weights_of[p] = (result.weights, list(hull))
                break
            direction = result.certificate[1:]
            best = max(unique, key=lambda q: (sum(c * x for c, x in zip(direction, q)), q))
            hull.append(best)
            hull_set.add(best)
            hull_rows.append((Fraction(1),) + best)
    survivors = sorted(hull_set)
    for p, (weights, basis) in weights_of.items():
        _check_weights(weights, p, basis)
    _check_separations(survivors, unique)
    return survivors


def _check_weights(weights, point, basis):
    if sum(weights) != 1 or any(w < 0 for w in weights):
        raise RuntimeError("discard weights are not a convex combination")
    for c in range(len(point)):
        if sum(w * q[c] for w, q in zip(weights, basis)) != point[c]:
            raise RuntimeError("discard weights do not reproduce the point")


def _check_separations(survivors, cloud):
    """Certify each survivor as extreme: the facets incident to it are tight
    simultaneously at no other input point, so their sum is a separating
    functional (zero at the survivor, strictly positive elsewhere)."""
    enumeration = vertices_to_facets(VRep.from_points(survivors))
    facet_rows = [row.entries for row in enumeration.facets.rows]
    incidence = {}
    for q in cloud:
        homog = (Fraction(1),) + q
        mask = 0
        for i, row in enumerate(facet_rows):
            value = _dot(row, homog)
            if value < 0:
                raise RuntimeError(f"input point {q} falls outside the survivor hull")
            if value == 0:
                mask |= 1 << i
        incidence[q] = mask
    for p in survivors:
        tight = incidence[p]
        if not tight and len(survivors) > 1:
            raise RuntimeError(f"survivor {p} is tight on no facet")
        for q in cloud:
            if q != p and (tight & incidence[q]) == tight:
                raise RuntimeError(f"survivor {p} is not separated from {q}")


def roundtrip_check(h: HRep) -> bool:
    """True iff facet->vertex->facet conversion reproduces the canonical input."""
    vertices = facets_to_vertices(h)
    back = vertices_to_facets(vertices)
    return back.equalities == () and back.facets == h


def verify_consistent(h: HRep, v: VRep) -> bool:
    """Appendix-style consistency: every vertex satisfies every facet."""
    return all(pair(hr, vr) >= 0 for hr in h.rows for vr in v.rows)


def verify_concise(rep: HRep | VRep) -> bool:
    """No row is a nonnegative combination of the other rows (checked by LP)."""
    rows = [r.entries for r in rep.rows]
    for i in range(len(rows)):
        others = rows[:i] + rows[i + 1 :]
        if not others:
            continue
        if in_cone(rows[i], others).inside:
            return False
    return True
