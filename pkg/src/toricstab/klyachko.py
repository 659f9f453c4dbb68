"""Equivariant reflexive sheaves as per-ray filtrations, and their slopes.

A sheaf of rank ``dim E`` is encoded by a decreasing filtration of E for each
ray: sparse change points (i, subspace) with the convention that the
filtration equals E before the first recorded step and stays at the last
recorded subspace afterwards (families of interest end in the zero
subspace).  The slope with respect to a polarization is computed from the
facet volume table:

    mu = (1/dim E) * sum_{i, rays} i * e(i) * vol(P^ray),

where e(i) is the dimension drop of the filtration between i and i+1.

This module can refute stability of a general filtration family against a
caller-supplied list of subspaces, but cannot decide it: only for the
tangent bundle is a finite sufficient candidate set available (see the
stability module).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import SubspaceBasis, canonical_span, subspace_intersection
from .fan import Fan, require_smooth_complete
from .polytope import FacetVolumeTable


class RayMismatch(ValueError):
    """Volume table and filtration family disagree on the ray list."""


class TrivialSubspace(ValueError):
    """Restricted slopes need a proper nonzero subspace."""


@dataclass(frozen=True)
class FiltrationFamily:
    """One decreasing filtration of a fixed E = Q^rank per ray.

    ``steps[r]`` is a tuple of (i, subspace) pairs with strictly increasing i
    and strictly decreasing subspaces; implicitly E for smaller i.
    """

    rank: int
    steps: tuple[tuple[tuple[int, SubspaceBasis], ...], ...]

    @property
    def n_rays(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class SlopeReport:
    slope: Fraction
    c1: tuple[int, ...]  # per-ray coefficient of the first Chern class


def tangent_filtrations(fan: Fan) -> FiltrationFamily:
    """The tangent bundle's filtrations: E at i <= 0, span(v) at i = 1, then 0."""
    require_smooth_complete(fan)
    n = fan.dim
    zero = canonical_span([], ambient_dim=n)
    steps = []
    for ray in fan.rays:
        line = canonical_span([ray])
        steps.append(((1, line), (2, zero)))
    return FiltrationFamily(rank=n, steps=tuple(steps))


def _weighted_drop_sum(ray_steps, rank: int) -> int:
    """sum_i i * (dim(i) - dim(i+1)) for one sparse filtration.

    The dimension drops from d_{j-1} to d_j at index i_j - 1, so the sum is
    sum_j (i_j - 1) * (d_{j-1} - d_j) with d_0 = rank.
    """
    total = 0
    prev_dim = rank
    for i, sub in ray_steps:
        total += (i - 1) * (prev_dim - sub.dim)
        prev_dim = sub.dim
    return total


def slope(family: FiltrationFamily, vols: FacetVolumeTable) -> SlopeReport:
    """Slope and first Chern class of the sheaf given by ``family``.

    For the tangent family this equals (1/n) * vol(boundary P) and the Chern
    coefficients are all 1 (the anticanonical class).
    """
    if family.n_rays != len(vols.volumes):
        raise RayMismatch(
            f"{family.n_rays} filtrations vs {len(vols.volumes)} facet volumes"
        )
    c1 = tuple(_weighted_drop_sum(steps, family.rank) for steps in family.steps)
    total = sum(
        (Fraction(c) * v for c, v in zip(c1, vols.volumes)), Fraction(0)
    )
    return SlopeReport(slope=total / family.rank, c1=c1)


def restrict_family(family: FiltrationFamily, subspace: SubspaceBasis) -> FiltrationFamily:
    """Saturated subsheaf induced by a subspace: intersect every step with it."""
    if subspace.dim == 0 or subspace.dim >= family.rank:
        raise TrivialSubspace(f"need 0 < dim < {family.rank}, got {subspace.dim}")
    new_steps = []
    for ray_steps in family.steps:
        cut = []
        for i, sub in ray_steps:
            meet = subspace_intersection(sub, subspace)
            if not cut or cut[-1][1] != meet:
                cut.append((i, meet))
        new_steps.append(tuple(cut))
    return FiltrationFamily(rank=subspace.dim, steps=tuple(new_steps))


def restricted_slope(
    family: FiltrationFamily, vols: FacetVolumeTable, subspace: SubspaceBasis
) -> Fraction:
    """Slope of the saturated subsheaf cut out by ``subspace``."""
    return slope(restrict_family(family, subspace), vols).slope


class HypothesisViolated(ValueError):
    """The step functions do not satisfy f >= g pointwise."""


def _weighted_sum(values, start: int) -> int:
    padded = [0] + list(values) + [0]
    return sum(
        (start - 1 + k) * (padded[k] - padded[k + 1])
        for k in range(len(padded) - 1)
    )


def monotone_step_inequality_check(f, g, start: int = 0) -> bool:
    """Check sum_i i*(f(i)-f(i+1)) >= sum_i i*(g(i)-g(i+1)) for f >= g.

    ``f`` and ``g`` are integer values over a common finite window beginning
    at index ``start`` and extended by zero outside it (so they agree off the
    window).  By Abel summation the difference of the two weighted sums is
    sum_i (f(i) - g(i)) >= 0.  Used as a test oracle for "saturation does
    not decrease the slope".
    """
    if len(f) != len(g):
        raise HypothesisViolated("windows of different lengths")
    if any(a < b for a, b in zip(f, g)):
        raise HypothesisViolated("f < g somewhere in the window")
    return _weighted_sum(f, start) >= _weighted_sum(g, start)
