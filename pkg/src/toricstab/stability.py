"""Slope (semi-)stability of the tangent bundle, decided exactly.

The tangent bundle of a smooth projective toric variety X of dimension n is
(semi-)stable with respect to an ample divisor D iff for every proper
subspace F of N_Q spanned by rays,

    (1/dim F) * sum_{rays v in F} vol(P_D^v)   <(=)   (1/n) * vol(boundary P_D),

and it suffices to test subspaces spanned by subsets of rays.  All margins
are exact rationals; strict vs non-strict is the sign of one number, with no
epsilon anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, gcd

from ._hull import ccw_order
from .exactlin import SubspaceBasis, canonical_span, dot
from .fan import Divisor, Fan, ample_violation, require_smooth_complete
from .polytope import FacetVolumeTable, Polytope, facet_volume_table, vertices


class StabilityStatus(str, enum.Enum):
    STABLE = "Stable"
    SEMISTABLE_NOT_STABLE = "SemistableNotStable"
    UNSTABLE = "Unstable"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class CandidateCapExceeded(ValueError):
    """Ray-subset enumeration exceeded the configured cap."""


class NoAmplePointInBox(ValueError):
    """No grid point of the search box is ample."""


class DegenerateSlice(ValueError):
    """The two slice directions are linearly dependent."""


@dataclass(frozen=True)
class CandidateSubspace:
    """A proper subspace spanned by rays, closed under 'contains every ray it spans'."""

    basis: SubspaceBasis
    rays_in: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True)
class Witness:
    subspace: SubspaceBasis
    rays_in: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class StabilityVerdict:
    status: StabilityStatus
    witnesses: tuple[Witness, ...]
    margin: Fraction | None  # min over candidates of rhs - lhs; None iff no candidates


DEFAULT_SUBSET_CAP = 2**20


@lru_cache(maxsize=None)
def enumerate_candidates(fan: Fan, cap: int = DEFAULT_SUBSET_CAP) -> tuple[CandidateSubspace, ...]:
    """All distinct proper subspaces spanned by ray subsets of size <= n-1.

    Each candidate is deduplicated by its canonical basis and closed so that
    ``rays_in`` lists every ray contained in the span.  Candidates are
    returned sorted by (dimension, ray set).
    """
    require_smooth_complete(fan)
    n = fan.dim
    m = len(fan.rays)
    total = sum(comb(m, k) for k in range(1, n))
    if total > cap:
        raise CandidateCapExceeded(f"{total} ray subsets exceeds cap {cap}")
    by_basis: dict[SubspaceBasis, CandidateSubspace] = {}
    for size in range(1, n):
        for subset in combinations(range(m), size):
            basis = canonical_span([fan.rays[i] for i in subset])
            if basis.dim == 0 or basis.dim >= n or basis in by_basis:
                continue
            rays_in = tuple(
                i for i, ray in enumerate(fan.rays) if basis.contains(ray)
            )
            by_basis[basis] = CandidateSubspace(basis=basis, rays_in=rays_in)
    return tuple(
        sorted(by_basis.values(), key=lambda c: (c.dim, c.rays_in))
    )


def _verdict_from_table(
    fan: Fan, vols: FacetVolumeTable, candidates
) -> StabilityVerdict:
    n = fan.dim
    rhs = vols.total / n
    margin = None
    scored = []
    for cand in candidates:
        lhs = sum((vols.volumes[i] for i in cand.rays_in), Fraction(0)) / cand.dim
        m = rhs - lhs
        scored.append((m, cand, lhs))
        if margin is None or m < margin:
            margin = m
    witnesses = tuple(
        Witness(subspace=c.basis, rays_in=c.rays_in, lhs=lhs, rhs=rhs)
        for m, c, lhs in sorted(scored, key=lambda t: (t[0], t[1].rays_in))
        if m <= 0
    )
    if margin is None or margin > 0:
        status = StabilityStatus.STABLE
    elif margin == 0:
        status = StabilityStatus.SEMISTABLE_NOT_STABLE
    else:
        status = StabilityStatus.UNSTABLE
    return StabilityVerdict(status=status, witnesses=witnesses, margin=margin)


def check_tangent(fan: Fan, divisor: Divisor) -> StabilityVerdict:
    """Decide stability of the tangent bundle for an ample divisor.

    Raises NotSmooth/NotComplete/NotAmple when the preconditions fail.  For
    n = 1 there is no proper nonzero subspace and the verdict is vacuously
    stable (margin None).
    """
    poly = vertices(fan, divisor)  # validates smooth, complete, ample
    vols = facet_volume_table(poly)
    candidates = enumerate_candidates(fan)
    return _verdict_from_table(fan, vols, candidates)


def verdict_for_polytope(poly: Polytope) -> StabilityVerdict:
    """Same as check_tangent but reusing an already computed Polytope."""
    vols = facet_volume_table(poly)
    candidates = enumerate_candidates(poly.fan)
    return _verdict_from_table(poly.fan, vols, candidates)


def subspace_concentration_check(poly: Polytope) -> bool:
    """Non-strict variant: margin >= 0 over all ray-span subspaces.

    Intended for reflexive polytopes with barycenter at the origin, where
    the non-strict inequality family is a theorem; the caller verifies those
    hypotheses through the polytope module.
    """
    verdict = verdict_for_polytope(poly)
    return verdict.margin is None or verdict.margin >= 0


# ---------------------------------------------------------------------------
# scans over the ample cone


@dataclass(frozen=True)
class RegionSlice:
    """Affine map (t1, t2) -> base + t1*dir1 + t2*dir2 into divisor space."""

    base: Divisor
    dir1: Divisor
    dir2: Divisor

    def at(self, t1, t2) -> Divisor:
        t1 = Fraction(t1)
        t2 = Fraction(t2)
        return Divisor(
            tuple(
                b + t1 * d1 + t2 * d2
                for b, d1, d2 in zip(self.base.coeffs, self.dir1.coeffs, self.dir2.coeffs)
            )
        )


@dataclass(frozen=True)
class RegionRow:
    t1: Fraction
    t2: Fraction
    status: str  # Stable | SemistableNotStable | Unstable | outside
    margin: Fraction | None
    witness: str


def _witness_id(verdict: StabilityVerdict) -> str:
    if verdict.witnesses:
        return "+".join(str(i) for i in verdict.witnesses[0].rays_in)
    return ""


def region_scan(fan: Fan, slc: RegionSlice, box, steps) -> list[RegionRow]:
    """Evaluate check_tangent on a half-open grid over the slice.

    ``box`` is (x0, x1, y0, y1) and ``steps`` is (N, M); the grid points are
    t1 = x0 + j*(x1-x0)/N for j = 1..N and likewise for t2, so each range is
    the half-open interval (x0, x1].  Points where the divisor is not ample
    are reported with status ``outside`` and empty margin.  Rows are emitted
    in row-major order (t1 outer, t2 inner).
    """
    require_smooth_complete(fan)
    from .exactlin import rank_of

    if rank_of([list(slc.dir1.coeffs), list(slc.dir2.coeffs)]) != 2:
        raise DegenerateSlice("slice directions are linearly dependent")
    x0, x1, y0, y1 = (Fraction(v) for v in box)
    n1, n2 = steps
    rows: list[RegionRow] = []
    for j in range(1, n1 + 1):
        t1 = x0 + Fraction(j, n1) * (x1 - x0)
        for k in range(1, n2 + 1):
            t2 = y0 + Fraction(k, n2) * (y1 - y0)
            div = slc.at(t1, t2)
            if ample_violation(fan, div) is not None:
                rows.append(RegionRow(t1, t2, "outside", None, ""))
                continue
            verdict = check_tangent(fan, div)
            rows.append(
                RegionRow(t1, t2, verdict.status.value, verdict.margin, _witness_id(verdict))
            )
    return rows


@dataclass(frozen=True)
class SearchResult:
    divisor: Divisor
    verdict: StabilityVerdict


def search_stable_polarization(
    fan: Fan, base: Divisor, radius, grid: int
) -> SearchResult:
    """Scan the grid box base + [-radius, radius]^#rays for the best margin.

    Step size is radius/grid, so each coefficient ranges over 2*grid + 1
    values.  Only ample points are evaluated; the maximizer of the exact
    margin is returned (ties broken by scan order, which is deterministic).
    The base itself may be non-ample (e.g. a nef pullback); it is then only
    the center of the box.
    """
    require_smooth_complete(fan)
    radius = Fraction(radius)
    if radius < 0 or grid < 1:
        raise ValueError("radius must be >= 0 and grid >= 1")
    if radius == 0:
        offsets = [Fraction(0)]
    else:
        offsets = [Fraction(k) * radius / grid for k in range(-grid, grid + 1)]
    m = len(fan.rays)
    best: tuple[Fraction, Divisor] | None = None
    fast = _surface_engine(fan) if fan.dim == 2 else None
    for combo in product(offsets, repeat=m):
        div = Divisor(tuple(b + o for b, o in zip(base.coeffs, combo)))
        if fast is not None:
            margin = fast.margin(div)
            if margin is None:
                continue
        else:
            if ample_violation(fan, div) is not None:
                continue
            margin = check_tangent(fan, div).margin
        if best is None or margin > best[0]:
            best = (margin, div)
    if best is None:
        raise NoAmplePointInBox("no ample grid point in the search box")
    return SearchResult(divisor=best[1], verdict=check_tangent(fan, best[1]))


# ---------------------------------------------------------------------------
# fast exact path for surfaces (dimension 2)


class _SurfaceEngine:
    """Integer-arithmetic margin computation for a fixed smooth complete 2-fan.

    For an integer divisor on a surface, all facet lengths are integers and
    the margin is a half-integer; rational divisors are cleared to integers
    first.  Results agree exactly with check_tangent.
    """

    def __init__(self, fan: Fan):
        require_smooth_complete(fan)
        self.fan = fan
        order = ccw_order(fan.rays)
        self.order = order
        d = len(order)
        cones = {tuple(sorted((order[i], order[(i + 1) % d]))) for i in range(d)}
        if cones != set(fan.max_cones):
            raise ValueError("max cones are not the consecutive pairs of the angular order")
        # candidate groups: rays collinear with each other (v and -v)
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, ray in enumerate(fan.rays):
            key = max(ray, tuple(-x for x in ray))
            groups.setdefault(key, []).append(i)
        self.groups = tuple(tuple(g) for g in groups.values())

    def margin2_int(self, a: list[int]) -> int | None:
        """Twice the stability margin for integer coefficients, or None if not ample."""
        rays = self.fan.rays
        order = self.order
        d = len(order)
        verts = []
        for i in range(d):
            p = rays[order[i]]
            q = rays[order[(i + 1) % d]]
            ai = a[order[i]]
            aj = a[order[(i + 1) % d]]
            # det [[p],[q]] = +1 in ccw order for a smooth fan
            verts.append((-ai * q[1] + aj * p[1], ai * q[0] - aj * p[0]))
        for i in range(d):
            u = verts[(i - 1) % d]  # vertex of the cone (order[i-1], order[i])
            nxt = order[(i + 1) % d]
            if u[0] * rays[nxt][0] + u[1] * rays[nxt][1] <= -a[nxt]:
                return None
        lengths = [0] * len(rays)
        for i in range(d):
            u0 = verts[(i - 1) % d]
            u1 = verts[i]
            p = rays[order[i]]
            w = (-p[1], p[0])
            delta = (u1[0] - u0[0], u1[1] - u0[1])
            length = delta[0] // w[0] if w[0] != 0 else delta[1] // w[1]
            lengths[order[i]] = abs(length)
        total = sum(lengths)
        best = max(sum(lengths[i] for i in g) for g in self.groups)
        return total - 2 * best

    def margin(self, divisor: Divisor) -> Fraction | None:
        scale = 1
        for c in divisor.coeffs:
            scale = scale * c.denominator // gcd(scale, c.denominator)
        ints = [int(c * scale) for c in divisor.coeffs]
        m2 = self.margin2_int(ints)
        if m2 is None:
            return None
        return Fraction(m2, 2 * scale)


@lru_cache(maxsize=None)
def _surface_engine(fan: Fan) -> _SurfaceEngine:
    return _SurfaceEngine(fan)
