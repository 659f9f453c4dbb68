"""Classification of smooth complete toric surfaces by blow-down structure.

Every smooth toric surface blows down to P^2 or to a Hirzebruch surface F_a.
Which minimal models are reachable decides the stability profile of the
tangent bundle:

* P^2 itself: stable for every polarization;
* P^1 x P^1: semistable on a ray of polarizations, never stable;
* an iterated blow-up of P^2 (other than P^2): some but not all
  polarizations stabilize;
* everything else: no polarization stabilizes, and the fan can be put in a
  normal form with six marked rays (0,1), (1,0), (0,-1), (1,-e), (-1,c),
  (-1,a) where a >= c > e+1 >= 1 and all remaining rays confined to two
  wedges; the span of (0,1) is then destabilizing for every ample class.

Blow-down search is exhaustive (BFS over all contraction sequences,
memoized) rather than greedy, since greedy contraction order is not known
to be confluent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._hull import ccw_order
from .fan import Divisor, Fan, make_fan, require_smooth_complete

RayTuple = tuple[tuple[int, int], ...]


class SearchCapExceeded(ValueError):
    """Blow-down search refused a fan with too many rays."""


class SurfaceKind(str, enum.Enum):
    P2 = "P2"
    P1XP1 = "P1xP1"
    BLOWUP_OF_P2 = "BlowupOfP2"
    NOT_BLOWUP_OF_P2 = "NotBlowupOfP2"


class StabProfile(str, enum.Enum):
    STAB_ALL = "StabAll"                      # Stab = Amp
    SEMISTABLE_ONLY = "SemistableOnly"        # empty Stab, nonempty sStab
    STAB_PROPER_NONEMPTY = "StabProperNonempty"  # empty != Stab != Amp
    STAB_EMPTY = "StabEmpty"                  # Stab = 0


@dataclass(frozen=True)
class SurfaceFan:
    """A smooth complete 2-dimensional fan with its rays in ccw cyclic order."""

    fan: Fan
    order: tuple[int, ...]  # ccw positions into fan.rays

    @property
    def rays_ccw(self) -> RayTuple:
        return tuple(self.fan.rays[i] for i in self.order)

    @property
    def n_rays(self) -> int:
        return len(self.fan.rays)


@dataclass(frozen=True)
class SurfaceClass:
    kind: SurfaceKind
    stab_profile: StabProfile
    lemma32_data: tuple | None  # (a, c, e, basis change) for the StabEmpty class


def surface_fan(fan: Fan) -> SurfaceFan:
    """Wrap a smooth complete 2-fan, checking that the max cones are the
    consecutive ccw ray pairs."""
    if fan.dim != 2:
        raise ValueError("surface fans have dimension 2")
    require_smooth_complete(fan)
    order = ccw_order(fan.rays)
    d = len(order)
    cones = {tuple(sorted((order[i], order[(i + 1) % d]))) for i in range(d)}
    if cones != set(fan.max_cones):
        raise ValueError("max cones are not consecutive ccw ray pairs")
    return SurfaceFan(fan=fan, order=tuple(order))


def surface_fan_from_rays(rays) -> SurfaceFan:
    """Build the (unique) smooth complete surface fan on the given ray set."""
    ray_tuples = [tuple(int(x) for x in r) for r in rays]
    order = ccw_order(ray_tuples)
    d = len(order)
    cones = [tuple(sorted((order[i], order[(i + 1) % d]))) for i in range(d)]
    return surface_fan(make_fan(2, ray_tuples, cones))


def _wall_coefficients(rays_ccw: RayTuple) -> list[int]:
    """c_i with v_{i-1} + v_{i+1} = c_i * v_i (c_i is minus the self-intersection)."""
    d = len(rays_ccw)
    out = []
    for i in range(d):
        p = rays_ccw[(i - 1) % d]
        v = rays_ccw[i]
        q = rays_ccw[(i + 1) % d]
        s = (p[0] + q[0], p[1] + q[1])
        if v[0] != 0:
            c, rem = divmod(s[0], v[0])
            ok = rem == 0 and c * v[1] == s[1]
        else:
            c, rem = divmod(s[1], v[1])
            ok = rem == 0 and c * v[0] == s[0]
        if not ok:
            raise ValueError("neighbor sum not a multiple of the ray; fan not smooth?")
        out.append(c)
    return out


def blow_down_candidates(sf: SurfaceFan) -> list[int]:
    """Ray indices i (into sf.fan.rays) with v_{prev} + v_{next} = v_i."""
    rays = sf.rays_ccw
    coeffs = _wall_coefficients(rays)
    return [sf.order[k] for k in range(len(rays)) if coeffs[k] == 1]


def _candidates_ccw(rays_ccw: RayTuple) -> list[int]:
    return [k for k, c in enumerate(_wall_coefficients(rays_ccw)) if c == 1]


def _contract_ccw(rays_ccw: RayTuple, k: int) -> RayTuple:
    return rays_ccw[:k] + rays_ccw[k + 1 :]


def _terminal_tag(rays_ccw: RayTuple) -> str:
    if len(rays_ccw) == 3:
        return "P2"
    a = max(_wall_coefficients(rays_ccw))
    return f"F{a}"


DEFAULT_RAY_CAP = 16


def _minimal_models_ccw(rays_ccw: RayTuple, cap: int) -> frozenset:
    if len(rays_ccw) > cap:
        raise SearchCapExceeded(f"{len(rays_ccw)} rays exceeds search cap {cap}")

    @lru_cache(maxsize=None)
    def search(state: RayTuple) -> frozenset:
        cands = _candidates_ccw(state) if len(state) >= 4 else []
        if not cands:
            return frozenset([_terminal_tag(state)])
        tags: set = set()
        for k in cands:
            tags |= search(_contract_ccw(state, k))
        return frozenset(tags)

    return search(rays_ccw)


def minimal_models(sf: SurfaceFan, cap: int = DEFAULT_RAY_CAP) -> frozenset:
    """Tags of all minimal models reachable by blow-down sequences.

    Exhaustive BFS over contraction orders, memoized on the surviving ray
    tuple.  Terminals are 'P2' (three rays) or 'Fa' (four rays, no
    contractible ray, a = largest neighbor-sum coefficient, never 1).
    """
    return _minimal_models_ccw(sf.rays_ccw, cap)


def contraction_path_to_p2(sf: SurfaceFan) -> list[RayTuple] | None:
    """A blow-down sequence of ccw ray tuples from sf down to a 3-ray fan."""

    @lru_cache(maxsize=None)
    def search(state: RayTuple):
        if len(state) == 3:
            return [state]
        for k in _candidates_ccw(state) if len(state) >= 4 else []:
            tail = search(_contract_ccw(state, k))
            if tail is not None:
                return [state] + tail
        return None

    return search(sf.rays_ccw)


def anticanonical_pullback_from_p2(sf: SurfaceFan) -> Divisor | None:
    """Pull the anticanonical divisor of a reachable P^2 back up to sf.

    Follows one contraction path in reverse; each reinserted ray w sits
    between neighbors p, n and picks up coefficient a_w = a_p + a_n.  The
    result is nef and big but not ample (a natural center for
    search_stable_polarization).  None when sf does not blow down to P^2.
    """
    path = contraction_path_to_p2(sf)
    if path is None:
        return None
    coeffs: dict[tuple[int, int], Fraction] = {
        ray: Fraction(1) for ray in path[-1]
    }
    for state in reversed(path[:-1]):
        new_ray = next(r for r in state if r not in coeffs)
        k = state.index(new_ray)
        prev_ray = state[(k - 1) % len(state)]
        next_ray = state[(k + 1) % len(state)]
        coeffs[new_ray] = coeffs[prev_ray] + coeffs[next_ray]
    return Divisor(tuple(coeffs[r] for r in sf.fan.rays))


def _transform_to_basis(v1, v2):
    """Integer matrix M with M v1 = (0,1) and M v2 = (1,0); det M = +1 when
    (v2, v1) is a positively oriented basis."""
    det = v1[0] * v2[1] - v2[0] * v1[1]
    # inverse of the column matrix (v1 | v2), times [[0,1],[1,0]]
    inv = ((v2[1], -v2[0]), (-v1[1], v1[0]))
    m_top = (inv[1][0] // det, inv[1][1] // det)
    m_bot = (inv[0][0] // det, inv[0][1] // det)
    return (m_top, m_bot)


def _apply(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def lemma32_match(sf: SurfaceFan):
    """Search for the six-ray normal form of a surface that is no blow-up of
    P^2 or P^1 x P^1.

    For each ray v with -v also a ray, the lattice basis (v, cw-neighbor of
    v) is mapped to ((0,1), (1,0)); the normalized fan must then contain
    (0,-1), (1,-e), (-1,c), (-1,a) with a >= c > e+1 >= 1 (the degenerate
    identifications (1,-e) = (1,0) for e = 0 and (-1,c) = (-1,a) for c = a
    are allowed), and every remaining ray must be of the form (-1, y) with
    c <= y <= a or (1, -y) with 0 <= y <= e.  Returns the first match
    (a, c, e, basis change) in this deterministic scan order, else None.
    """
    rays = sf.rays_ccw
    d = len(rays)
    ray_set = set(rays)
    for i in range(d):
        v1 = rays[i]
        if (-v1[0], -v1[1]) not in ray_set:
            continue
        v2 = rays[(i - 1) % d]  # clockwise neighbor
        m = _transform_to_basis(v1, v2)
        image = [_apply(m, r) for r in rays]
        j = image.index((0, -1))  # position of -v1
        v0 = image[(i + 1) % d]
        assert v0[0] == -1, "ccw neighbor of (0,1) must have first coordinate -1"
        a = v0[1]
        vl_prev = image[(j + 1) % d]  # clockwise predecessor of (0,-1)
        vl_next = image[(j - 1) % d]  # clockwise successor of (0,-1)
        if vl_prev[0] != 1 or vl_next[0] != -1:
            continue
        e = -vl_prev[1]
        c = vl_next[1]
        if not (a >= c > e + 1 >= 1):
            continue
        marked = {i, (i - 1) % d, (i + 1) % d, j, (j + 1) % d, (j - 1) % d}
        ok = True
        for k in range(d):
            if k in marked:
                continue
            x, y = image[k]
            if x == -1 and c <= y <= a:
                continue
            if x == 1 and 0 <= -y <= e:
                continue
            ok = False
            break
        if ok:
            return (a, c, e, m)
    return None


def _is_f0(rays_ccw: RayTuple) -> bool:
    return len(rays_ccw) == 4 and all(c == 0 for c in _wall_coefficients(rays_ccw))


def classify_surface(sf: SurfaceFan, cap: int = DEFAULT_RAY_CAP) -> SurfaceClass:
    """Surface class and tangent-bundle stability profile.

    P2 for three rays; P1xP1 for fans lattice-equivalent to the product fan;
    BlowupOfP2 when some blow-down sequence reaches P^2; NotBlowupOfP2
    otherwise, in which case the six-ray normal form data is attached.
    """
    rays = sf.rays_ccw
    if len(rays) == 3:
        return SurfaceClass(SurfaceKind.P2, StabProfile.STAB_ALL, None)
    if _is_f0(rays):
        return SurfaceClass(SurfaceKind.P1XP1, StabProfile.SEMISTABLE_ONLY, None)
    if "P2" in minimal_models(sf, cap=cap):
        return SurfaceClass(SurfaceKind.BLOWUP_OF_P2, StabProfile.STAB_PROPER_NONEMPTY, None)
    return SurfaceClass(
        SurfaceKind.NOT_BLOWUP_OF_P2, StabProfile.STAB_EMPTY, lemma32_match(sf)
    )
