"""Brute-force convex hull facet enumeration at desk scale.

Facets of conv(points) in a full-dimensional setting are found by testing
every d-subset of points: the affine hyperplane it spans is a facet
hyperplane iff all points lie (weakly) on one side.  Complexity is
C(#points, d) * #points, which is fine for the polytopes this package
handles (dimension <= 5, a few dozen vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactlin import Vector, dot, nullspace, primitive, rank_of, vec, vsub


def ccw_order(rays) -> list[int]:
    """Indices of 2D integer vectors sorted counterclockwise from the positive x-axis."""
    import functools

    def cmp(i: int, j: int) -> int:
        u, v = rays[i], rays[j]
        hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
        hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
        if hu != hv:
            return hu - hv
        cross = u[0] * v[1] - u[1] * v[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(range(len(rays)), key=functools.cmp_to_key(cmp))


@dataclass(frozen=True)
class Facet:
    """A facet hyperplane {u : <u, normal> = offset} with all points on the >= side."""

    normal: tuple[int, ...]
    offset: Fraction
    incident: tuple[int, ...]  # indices of points lying on the hyperplane


def hull_facets(points: list[Vector], dim: int) -> list[Facet]:
    """Facets of the convex hull of ``points``, assumed to affinely span R^dim.

    Normals are primitive integer vectors pointing inward: every point p
    satisfies <p, normal> >= offset, with equality exactly on the facet.
    """
    pts = [vec(p) for p in points]
    npts = len(pts)
    seen: dict[tuple[tuple[int, ...], Fraction], None] = {}
    facets: list[Facet] = []
    for subset in combinations(range(npts), dim):
        base = pts[subset[0]]
        diffs = [list(vsub(pts[i], base)) for i in subset[1:]]
        kernel = nullspace(diffs, dim) if diffs else nullspace([[Fraction(0)] * dim], dim)
        if len(kernel) != 1:
            continue  # the subset is affinely degenerate
        normal = primitive(kernel[0])
        offset = dot(base, normal)
        side = 0
        ok = True
        for p in pts:
            s = dot(p, normal) - offset
            if s == 0:
                continue
            sgn = 1 if s > 0 else -1
            if side == 0:
                side = sgn
            elif side != sgn:
                ok = False
                break
        if not ok or side == 0:
            continue
        if side < 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        key = (normal, offset)
        if key in seen:
            continue
        seen[key] = None
        incident = tuple(i for i, p in enumerate(pts) if dot(p, normal) == offset)
        facets.append(Facet(normal=normal, offset=offset, incident=incident))
    return facets


def vertex_indices(points: list[Vector], facets: list[Facet], dim: int) -> list[int]:
    """Indices of the points that are genuine vertices of the hull.

    A point is a vertex iff the normals of its incident facets span R^dim.
    Non-vertices (interior points, points interior to faces, duplicates) are
    dropped.
    """
    incident_normals: dict[int, list] = {i: [] for i in range(len(points))}
    for f in facets:
        for i in f.incident:
            incident_normals[i].append(f.normal)
    out = []
    seen: set[Vector] = set()
    for i, p in enumerate(points):
        key = vec(p)
        if key in seen:
            continue
        if rank_of(incident_normals[i]) == dim:
            out.append(i)
            seen.add(key)
    return out
