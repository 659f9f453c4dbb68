"""Polytopes of polarized toric varieties: vertices, lattice volumes, barycenter.

Volume convention: *normalized* lattice volume, fixed so the unit simplex has
volume 1 (d! times the Euclidean volume for full-dimensional lattice
polytopes).  Facet volumes are measured with respect to the induced lattice
of the facet's affine span.  Rational polytopes are handled by clearing
denominators: vol(P) = vol(cP) / c^d for an integer dilation c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _hull
from .exactlin import (
    Vector,
    dot,
    hyperplane_lattice_basis,
    lattice_coordinates,
    rank_of,
    rref,
    saturated_span_basis,
    vec,
    vsub,
    _solve_overdetermined,
)
from .fan import Divisor, Fan, NotAmple, all_vertices, ample_violation, require_smooth_complete


class DegenerateInput(ValueError):
    """Points do not affinely span a subspace of the stated dimension."""


@dataclass(frozen=True)
class Polytope:
    """Vertex data of P = {u : <u, v> >= -a_v}, one vertex per max cone."""

    fan: Fan
    divisor: Divisor
    vertices: tuple[Vector, ...]  # aligned with fan.max_cones


@dataclass(frozen=True)
class FacetVolumeTable:
    """Normalized lattice volume of each facet P^v, indexed like the fan's rays."""

    volumes: tuple[Fraction, ...]
    total: Fraction


def vertices(fan: Fan, divisor: Divisor) -> Polytope:
    """Solve the n x n unimodular vertex systems, one per max cone.

    Requires an ample divisor; the offending (cone, ray) pair is reported
    otherwise.  Vertices are integral whenever the divisor is integral.
    """
    require_smooth_complete(fan)
    witness = ample_violation(fan, divisor)
    if witness is not None:
        ci, ri = witness
        raise NotAmple(
            f"divisor is not ample: vertex of cone {fan.max_cones[ci]} "
            f"violates strictness at ray {fan.rays[ri]}",
            cone=fan.max_cones[ci],
            ray=fan.rays[ri],
        )
    return Polytope(fan=fan, divisor=divisor, vertices=all_vertices(fan, divisor))


def _lattice_volume_full_dim(points: list[tuple[int, ...]], d: int) -> int:
    """Normalized volume of conv(points) for integer points spanning R^d."""
    pts = sorted(set(points))
    if d == 0:
        return 1
    if d == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    facets = _hull.hull_facets([vec(p) for p in pts], d)
    base = pts[0]
    total = 0
    for f in facets:
        dist = dot(base, f.normal) - f.offset
        if dist == 0:
            continue
        facet_points = [pts[i] for i in f.incident]
        total += int(dist) * _volume_of_integer_points(facet_points, d - 1)
    return total


def _volume_of_integer_points(points: list[tuple[int, ...]], d: int) -> int:
    """Map integer points onto Z^d coordinates of their span and recurse."""
    base = points[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points]
    if rank_of(diffs) != d:
        raise DegenerateInput(f"points span dimension {rank_of(diffs)}, expected {d}")
    basis = saturated_span_basis(diffs, len(base))
    coords = lattice_coordinates(diffs, basis)
    return _lattice_volume_full_dim(coords, d)


def normalized_volume(points, dim: int) -> Fraction:
    """Normalized lattice volume of conv(points) inside its affine span.

    ``points`` are rational vectors whose affine span has dimension ``dim``;
    the volume is taken with respect to the induced lattice of the span
    (after translating a vertex to the origin), normalized so that the unit
    simplex has volume 1.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise DegenerateInput("no points")
    base = pts[0]
    diffs = [vsub(p, base) for p in pts]
    if rank_of(diffs) != dim:
        raise DegenerateInput(
            f"points span dimension {rank_of(diffs)}, expected {dim}"
        )
    if dim == 0:
        return Fraction(1)
    scale = 1
    for p in diffs:
        for x in p:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    int_points = [tuple(int(x * scale) for x in p) for p in diffs]
    return Fraction(_volume_of_integer_points(int_points, dim), scale**dim)


def facet_volume_table(polytope: Polytope) -> FacetVolumeTable:
    """Per-ray facet volumes vol(P^v) and their sum vol(boundary P).

    The facet of a ray v is the convex hull of the vertices of max cones
    containing v; it is mapped to (n-1)-dimensional coordinates through a
    lattice basis of the hyperplane orthogonal to v before measuring.
    """
    fan = polytope.fan
    n = fan.dim
    vols = []
    for ri in range(len(fan.rays)):
        incident = [
            polytope.vertices[ci]
            for ci, cone in enumerate(fan.max_cones)
            if ri in cone
        ]
        if n == 1:
            vols.append(Fraction(1))
            continue
        basis = hyperplane_lattice_basis(fan.rays[ri])
        base = incident[0]
        mapped = []
        for u in incident:
            diff = vsub(u, base)
            # coordinates x with x @ basis = diff (diff lies in the hyperplane)
            eqs = [[Fraction(basis[i][j]) for i in range(n - 1)] for j in range(n)]
            mapped.append(tuple(_solve_overdetermined(eqs, list(diff))))
        vols.append(normalized_volume(mapped, n - 1))
    total = sum(vols, Fraction(0))
    return FacetVolumeTable(volumes=tuple(vols), total=total)


def _triangulate_indices(points: list[Vector], d: int) -> list[tuple[int, ...]]:
    """Index tuples of a simplicial decomposition of conv(points), dim d in R^d."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    if d == 0:
        return [(order[0],)]
    if d == 1:
        return [(order[0], order[-1])]
    facets = _hull.hull_facets(points, d)
    base = order[0]
    simplices = []
    for f in facets:
        if base in f.incident:
            continue
        sub_points = [points[i] for i in f.incident]
        # map facet points to coordinates of their (d-1)-dim affine span
        origin = sub_points[0]
        diffs = [list(vsub(p, origin)) for p in sub_points]
        span_rows = rref(diffs)
        mapped = []
        for p in sub_points:
            diff = vsub(p, origin)
            eqs = [[span_rows[i][j] for i in range(d - 1)] for j in range(d)]
            mapped.append(tuple(_solve_overdetermined(eqs, list(diff))))
        for sub in _triangulate_indices(mapped, d - 1):
            simplices.append(tuple(f.incident[i] for i in sub) + (base,))
    return simplices


def _simplex_volume_and_centroid(simplex: list[Vector]) -> tuple[Fraction, Vector]:
    d = len(simplex) - 1
    base = simplex[0]
    edges = [list(vsub(p, base)) for p in simplex[1:]]
    det = _rational_det(edges)
    centroid = tuple(
        sum(p[j] for p in simplex) / (d + 1) for j in range(len(base))
    )
    return abs(det), centroid


def _rational_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                c = m[i][col] * inv
                m[i] = [x - c * p for x, p in zip(m[i], m[col])]
    return det


def barycenter_and_reflexivity(polytope: Polytope) -> dict:
    """Volume-weighted barycenter (exact) and reflexivity of P.

    P is reflexive iff all divisor coefficients equal 1 (the origin is then
    automatically the unique interior lattice point for an ample divisor on
    a complete fan).
    """
    pts = list(dict.fromkeys(polytope.vertices))
    n = polytope.fan.dim
    if rank_of([vsub(p, pts[0]) for p in pts]) != n:
        raise DegenerateInput("polytope is not full-dimensional")
    total = Fraction(0)
    weighted = [Fraction(0)] * n
    for simplex in _triangulate_indices(pts, n):
        vol, centroid = _simplex_volume_and_centroid([pts[i] for i in simplex])
        total += vol
        for j in range(n):
            weighted[j] += vol * centroid[j]
    barycenter = tuple(w / total for w in weighted)
    reflexive = all(c == 1 for c in polytope.divisor.coeffs) and all(
        dot((0,) * n, v) > -c for v, c in zip(polytope.fan.rays, polytope.divisor.coeffs)
    )
    return {"barycenter": barycenter, "reflexive": reflexive}
