"""Complete smooth fans, torus-invariant divisors, and passage to/from polytopes.

Conventions used throughout the package:

* rays are primitive integer vectors ``v`` in the lattice N;
* a divisor is stored by its per-ray coefficients ``a``, and the associated
  polytope is ``P = {u : <u, v> >= -a_v for every ray v}`` (inner normals);
* max cones are index sets into the ray list; for a smooth complete fan of
  dimension n every max cone has exactly n rays forming a lattice basis.

Completeness is certified combinatorially: every ridge (an (n-1)-subset of a
max cone) must be shared by exactly two max cones and the max cones must be
connected through ridges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _hull
from .exactlin import (
    Vector,
    det_int,
    dot,
    gcd_list,
    invert_square,
    solve_square,
    vec,
)


class MalformedFan(ValueError):
    """Duplicate rays, non-primitive ray, or cone index out of range."""


class NotAFace(ValueError):
    """The index set is not a face of any max cone."""


class SubdivisionOfRay(ValueError):
    """Stellar subdivision needs a cone of dimension at least 2."""


class NotARefinement(ValueError):
    """Some ray of the fine fan lies in no max cone of the coarse fan."""


class NotFullDimensional(ValueError):
    """Input points do not affinely span the ambient space."""


class TooManyVerticesForBruteForce(ValueError):
    """Vertex count exceeds the brute-force facet enumeration cap."""


class NotAmple(ValueError):
    """Strict convexity of the support function fails; carries a witness (cone, ray)."""

    def __init__(self, message, cone=None, ray=None):
        super().__init__(message)
        self.cone = cone
        self.ray = ray


class NotSmooth(ValueError):
    pass


class NotComplete(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    @property
    def n_rays(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class Divisor:
    coeffs: tuple[Fraction, ...]

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, c) -> "Divisor":
        c = Fraction(c)
        return Divisor(tuple(c * a for a in self.coeffs))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)


def make_fan(dim: int, rays, max_cones) -> Fan:
    """Normalize raw ray/cone data into a hashable Fan (sorted index tuples)."""
    ray_tuples = tuple(tuple(int(x) for x in r) for r in rays)
    cone_tuples = tuple(tuple(sorted(int(i) for i in c)) for c in max_cones)
    return Fan(dim=int(dim), rays=ray_tuples, max_cones=cone_tuples)


def make_divisor(coeffs) -> Divisor:
    return Divisor(tuple(Fraction(c) for c in coeffs))


def projective_space_fan(n: int) -> Fan:
    """The standard fan of P^n: rays e_1..e_n and -(e_1+...+e_n)."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(sorted(set(range(n + 1)) - {i})) for i in range(n + 1)]
    return make_fan(n, rays, cones)


def _structural_check(fan: Fan) -> None:
    n = fan.dim
    if n < 1:
        raise MalformedFan("fan dimension must be positive")
    seen = set()
    for r in fan.rays:
        if len(r) != n:
            raise MalformedFan(f"ray {r} does not have length {n}")
        if all(x == 0 for x in r):
            raise MalformedFan("zero ray")
        if gcd_list(r) != 1:
            raise MalformedFan(f"ray {r} is not primitive")
        if r in seen:
            raise MalformedFan(f"duplicate ray {r}")
        seen.add(r)
    for cone in fan.max_cones:
        if len(set(cone)) != len(cone):
            raise MalformedFan(f"repeated index in cone {cone}")
        for i in cone:
            if not 0 <= i < len(fan.rays):
                raise MalformedFan(f"cone index {i} out of range")


@lru_cache(maxsize=None)
def validate(fan: Fan) -> dict:
    """Check smoothness and completeness; raises MalformedFan on structural errors.

    smooth: every max cone has n rays whose matrix has determinant +-1.
    complete: every ridge of a max cone is shared by exactly two max cones
    and the ridge graph on max cones is connected (for n = 1: the two rays
    +-1 with their singleton cones).
    """
    _structural_check(fan)
    n = fan.dim
    smooth = all(
        len(c) == n and abs(det_int([fan.rays[i] for i in c])) == 1
        for c in fan.max_cones
    )
    if n == 1:
        complete = sorted(fan.rays) == [(-1,), (1,)] and sorted(fan.max_cones) == [(0,), (1,)]
        return {"smooth": smooth, "complete": complete}
    ridge_map: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        if len(cone) != n:
            return {"smooth": smooth, "complete": False}
        for drop in cone:
            ridge = tuple(sorted(set(cone) - {drop}))
            ridge_map.setdefault(ridge, []).append(ci)
    if any(len(cs) != 2 for cs in ridge_map.values()):
        return {"smooth": smooth, "complete": False}
    # connectivity through ridges
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(fan.max_cones))}
    for a, b in ridge_map.values():
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {0} if fan.max_cones else set()
    stack = [0] if fan.max_cones else []
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    complete = len(seen) == len(fan.max_cones) and len(fan.max_cones) > 0
    return {"smooth": smooth, "complete": complete}


def require_smooth_complete(fan: Fan) -> None:
    v = validate(fan)
    if not v["smooth"]:
        raise NotSmooth("fan is not smooth")
    if not v["complete"]:
        raise NotComplete("fan is not complete")


@lru_cache(maxsize=None)
def _cone_inverses(fan: Fan) -> tuple:
    """Per max cone, the inverse of the ray matrix (rows = rays of the cone)."""
    out = []
    for cone in fan.max_cones:
        mat = [list(map(Fraction, fan.rays[i])) for i in cone]
        out.append(invert_square(mat))
    return tuple(out)


def cone_vertex(fan: Fan, divisor: Divisor, cone_index: int) -> Vector:
    """The vertex u with <u, v_i> = -a_i for every ray i of the given max cone."""
    inv = _cone_inverses(fan)[cone_index]
    cone = fan.max_cones[cone_index]
    rhs = [-divisor.coeffs[i] for i in cone]
    n = fan.dim
    return tuple(
        sum(inv[j][k] * rhs[k] for k in range(n))
        for j in range(n)
    )


def all_vertices(fan: Fan, divisor: Divisor) -> tuple[Vector, ...]:
    return tuple(cone_vertex(fan, divisor, ci) for ci in range(len(fan.max_cones)))


def ample_violation(fan: Fan, divisor: Divisor):
    """First (cone, ray) pair violating strict convexity, or None if ample."""
    verts = all_vertices(fan, divisor)
    for ci, cone in enumerate(fan.max_cones):
        inside = set(cone)
        u = verts[ci]
        for ri, ray in enumerate(fan.rays):
            if ri in inside:
                continue
            if dot(u, ray) <= -divisor.coeffs[ri]:
                return ci, ri
    return None


def is_ample(fan: Fan, divisor: Divisor) -> bool:
    """Strict convexity of the support function: for every max cone vertex u
    and every ray v outside the cone, <u, v> > -a_v."""
    require_smooth_complete(fan)
    return ample_violation(fan, divisor) is None


def stellar_subdivide(fan: Fan, cone) -> Fan:
    """Stellar subdivision at a face: insert the ray sum and star-subdivide.

    The new ray is the (primitive) sum of the face's rays; every max cone
    containing the face is replaced by the cones obtained by swapping one
    face ray for the new one.  Smoothness and completeness are preserved.
    """
    face = tuple(sorted(set(int(i) for i in cone)))
    if len(face) < 2:
        raise SubdivisionOfRay("stellar subdivision needs at least 2 rays")
    if not any(set(face) <= set(c) for c in fan.max_cones):
        raise NotAFace(f"{face} is not a face of any max cone")
    new_ray = tuple(sum(fan.rays[i][j] for i in face) for j in range(fan.dim))
    new_index = len(fan.rays)
    new_cones = []
    for c in fan.max_cones:
        if set(face) <= set(c):
            for drop in face:
                new_cones.append(tuple(sorted((set(c) - {drop}) | {new_index})))
        else:
            new_cones.append(c)
    return Fan(dim=fan.dim, rays=fan.rays + (new_ray,), max_cones=tuple(new_cones))


def cone_containing(fan: Fan, point) -> int:
    """Index of the first max cone containing the point (smooth cones only)."""
    p = vec(point)
    for ci, cone in enumerate(fan.max_cones):
        inv = _cone_inverses(fan)[ci]
        # coordinates of p in the cone's ray basis: lambda with lambda @ rays = p
        n = fan.dim
        lam = solve_square(
            [[Fraction(fan.rays[i][j]) for i in cone] for j in range(n)],
            list(p),
        )
        if all(x >= 0 for x in lam):
            return ci
    return -1


def pullback_divisor(fine: Fan, coarse: Fan, divisor: Divisor) -> Divisor:
    """Pull a divisor back along a fan refinement.

    The coefficient of each fine ray v is -psi(v), where psi is the support
    function of the divisor on the coarse fan (psi(v) = <u_sigma, v> on the
    max cone sigma containing v).  Coefficients of shared rays are unchanged;
    the result is nef but in general not ample.
    """
    coeffs = []
    for ray in fine.rays:
        ci = cone_containing(coarse, ray)
        if ci < 0:
            raise NotARefinement(f"ray {ray} lies in no max cone of the coarse fan")
        u = cone_vertex(coarse, divisor, ci)
        coeffs.append(-dot(u, ray))
    return Divisor(tuple(coeffs))


DEFAULT_VERTEX_CAP = 40


def normal_fan_from_vertices(vertices, max_vertices: int = DEFAULT_VERTEX_CAP) -> tuple[Fan, Divisor]:
    """Normal fan and divisor of conv(vertices) given in V-representation.

    Returns primitive inner facet normals v with offsets a such that
    P = {u : <u, v> >= -a}, irredundant, together with one max cone per
    vertex (the indices of its incident facets).  Brute-force facet
    enumeration; intended for n <= 5 at desk scale.
    """
    pts = [vec(v) for v in vertices]
    if not pts:
        raise NotFullDimensional("no points given")
    n = len(pts[0])
    if len(pts) > max_vertices:
        raise TooManyVerticesForBruteForce(
            f"{len(pts)} vertices exceeds the cap of {max_vertices}"
        )
    base = pts[0]
    if len({len(p) for p in pts}) != 1:
        raise NotFullDimensional("points of mixed dimensions")
    from .exactlin import rank_of, vsub

    if rank_of([vsub(p, base) for p in pts[1:]]) != n:
        raise NotFullDimensional("points do not affinely span the ambient space")
    facets = _hull.hull_facets(pts, n)
    rays = tuple(f.normal for f in facets)
    coeffs = tuple(-f.offset for f in facets)
    cones = []
    for vi in _hull.vertex_indices(pts, facets, n):
        incident = tuple(fi for fi, f in enumerate(facets) if vi in f.incident)
        cones.append(incident)
    fan = make_fan(n, rays, cones)
    return fan, Divisor(coeffs)


# ---------------------------------------------------------------------------
# JSON interchange

def _frac_to_str(x: Fraction) -> str:
    return str(x)


def fan_to_json(fan: Fan) -> str:
    return json.dumps(
        {
            "dim": fan.dim,
            "rays": [list(r) for r in fan.rays],
            "max_cones": [list(c) for c in fan.max_cones],
        }
    )


def fan_from_json(text: str) -> Fan:
    data = json.loads(text)
    return make_fan(data["dim"], data["rays"], data["max_cones"])


def divisor_to_json(divisor: Divisor) -> str:
    return json.dumps({"coeffs": [_frac_to_str(c) for c in divisor.coeffs]})


def divisor_from_json(text: str) -> Divisor:
    data = json.loads(text)
    return make_divisor(data["coeffs"])


def polytope_to_json(vertices) -> str:
    return json.dumps(
        {"vertices": [[_frac_to_str(Fraction(x)) for x in v] for v in vertices]}
    )


def polytope_vertices_from_json(text: str) -> list[Vector]:
    data = json.loads(text)
    return [vec(v) for v in data["vertices"]]
