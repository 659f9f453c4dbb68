"""Closed-form stability engine for projectivized split bundles over P^s.

A smooth projective toric variety of Picard rank 2 is a projectivization
X = P(O + O(a_1) + ... + O(a_r)) over P^s with 0 <= a_1 <= ... <= a_r.
An ample class O_X(lambda) (x) pi^* O(mu) corresponds, up to the harmless
overall dilation by lambda, to the Cayley polytope

    P = nu*D_s * (a_1+nu)*D_s * ... * (a_r+nu)*D_s,      nu = mu/lambda,

where D_s is the unit s-simplex and * denotes the Cayley sum.  The facet
volumes of P have closed forms in nu, and the stability inequality reduces
to comparing one threshold against a finite maximum (V_0, the V-average, W,
and a family of index-set terms).  For the bundle to admit any stabilizing
polarization the twist must be (0, ..., 0, 1); stability then holds exactly
when a fixed degree-s polynomial is negative at nu.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .fan import Divisor, Fan, make_divisor, make_fan
from .stability import StabilityStatus


class AllZero(ValueError):
    """Cayley volume of the all-zero dilation vector."""


@dataclass(frozen=True)
class Rank2Variety:
    """P(O + O(a_1) + ... + O(a_r)) over P^s with nondecreasing a_i >= 0."""

    r: int
    s: int
    a: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("need r >= 1 and s >= 1")
        if len(self.a) != self.r:
            raise ValueError(f"expected {self.r} twist entries, got {len(self.a)}")
        if any(x < 0 for x in self.a):
            raise ValueError("twists must be nonnegative")
        if list(self.a) != sorted(self.a):
            raise ValueError("twists must be nondecreasing")

    @property
    def z(self) -> int:
        """Number of leading zero twists (z = r when all twists vanish)."""
        return sum(1 for x in self.a if x == 0)

    @property
    def dim(self) -> int:
        return self.r + self.s

    def is_fano(self) -> bool:
        return sum(self.a) <= self.s


@dataclass(frozen=True)
class VolumeVector:
    """Facet volumes of the Cayley polytope: V_0 >= ... >= V_r and W (s+1 times)."""

    V: tuple[Fraction, ...]
    W: Fraction
    nu: Fraction


@dataclass(frozen=True)
class StabilityPolynomial:
    """p(x) with p(nu) < 0 iff the polytope at nu is stable (twist (0,..,0,1)).

    Coefficients are listed from degree 0 upward; there is exactly one sign
    change, hence one positive root gamma, bracketed by ``gamma_bracket``.
    """

    r: int
    s: int
    coeffs: tuple[Fraction, ...]
    gamma_bracket: tuple[Fraction, Fraction]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def rank2(r: int, s: int, a) -> Rank2Variety:
    return Rank2Variety(r=r, s=s, a=tuple(int(x) for x in a))


def build_fan(variety: Rank2Variety) -> Fan:
    """Fan with rays v_0 = -(e_1+...+e_r), v_i = e_i, w_0 = (a, -1, ..., -1),
    w_j = e_{r+j}, and the (r+1)(s+1) max cones omitting one v and one w."""
    r, s = variety.r, variety.s
    n = r + s
    rays = []
    rays.append(tuple([-1] * r + [0] * s))
    for i in range(r):
        rays.append(tuple(int(k == i) for k in range(r)) + (0,) * s)
    rays.append(tuple(variety.a) + (-1,) * s)
    for j in range(s):
        rays.append((0,) * r + tuple(int(k == j) for k in range(s)))
    v_indices = list(range(r + 1))
    w_indices = list(range(r + 1, r + s + 2))
    cones = []
    for i in range(r + 1):
        for j in range(s + 1):
            cone = [x for x in v_indices if x != v_indices[i]] + [
                x for x in w_indices if x != w_indices[j]
            ]
            cones.append(tuple(sorted(cone)))
    return make_fan(n, rays, cones)


def polarization_divisor(variety: Rank2Variety, lam, mu) -> Divisor:
    """Divisor of O_X(lambda) (x) pi^* O(mu) on build_fan's ray order."""
    lam = Fraction(lam)
    mu = Fraction(mu)
    coeffs = [Fraction(0)] * (variety.r + variety.s + 2)
    coeffs[0] = lam
    coeffs[variety.r + 1] = mu
    return make_divisor(coeffs)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def cayley_volume(k, s: int) -> Fraction:
    """Normalized volume of k_0*D_s * ... * k_r*D_s: the complete homogeneous
    sum of degree s in the k_i.  For r = 1 this is the geometric-sum closed
    form (k_1^{s+1} - k_0^{s+1})/(k_1 - k_0)."""
    ks = [Fraction(x) for x in k]
    if all(x == 0 for x in ks):
        raise AllZero("all Cayley dilations are zero")
    total = Fraction(0)
    for m in _compositions(s, len(ks)):
        term = Fraction(1)
        for base, e in zip(ks, m):
            term *= base**e
        total += term
    return total


def _power_sum(values, t: int) -> Fraction:
    """sum over d_1+...+d_m = t of prod values_i^{d_i}; equals [t == 0] when empty."""
    if not values:
        return Fraction(1 if t == 0 else 0)
    total = Fraction(0)
    for m in _compositions(t, len(values)):
        term = Fraction(1)
        for base, e in zip(values, m):
            term *= Fraction(base) ** e
        total += term
    return total


def cayley_volume_closed_form(c, s: int, nu) -> Fraction:
    """Volume of (nu+c_0)*D_s * ... * (nu+c_r)*D_s as a polynomial in nu:
    sum_k binom(s+r, k) * (sum_{|d| = s-k} prod c_i^{d_i}) * nu^k."""
    nu = Fraction(nu)
    r = len(c) - 1
    return sum(
        (comb(s + r, k) * _power_sum(list(c), s - k) * nu**k for k in range(s + 1)),
        Fraction(0),
    )


def closed_form_volumes(variety: Rank2Variety, nu) -> VolumeVector:
    """The facet volumes V_0, ..., V_r and W evaluated at nu = mu/lambda."""
    nu = Fraction(nu)
    if nu <= 0:
        raise ValueError("nu must be positive")
    r, s, a = variety.r, variety.s, variety.a
    v0 = sum(
        (comb(s + r - 1, k) * _power_sum(list(a), s - k) * nu**k for k in range(s + 1)),
        Fraction(0),
    )
    vs = [v0]
    for i in range(1, r + 1):
        others = [a[j] for j in range(r) if j != i - 1]
        vi = sum(
            (
                comb(s + r - 1, k) * _power_sum(others, s - k) * nu**k
                for k in range(s + 1)
            ),
            Fraction(0),
        )
        vs.append(vi)
    w = sum(
        (comb(s + r - 1, k) * _power_sum(list(a), s - 1 - k) * nu**k for k in range(s)),
        Fraction(0),
    )
    return VolumeVector(V=tuple(vs), W=w, nu=nu)


def total_volume(variety: Rank2Variety, nu) -> Fraction:
    """Volume of the whole Cayley polytope (the c = (0, a_1, ..., a_r) case)."""
    return cayley_volume_closed_form([0] + list(variety.a), variety.s, nu)


def _index_set_admissible(variety: Rank2Variety, index_set: frozenset) -> bool:
    """Whether lin({v_i : i in I}) x R^s contains the ray w_0.

    True iff {z+1, ..., r} is contained in I, or {0, ..., z} is contained in
    I and the omitted positive twists all share one value.
    """
    z = variety.z
    r = variety.r
    positive = set(range(z + 1, r + 1))
    if positive <= index_set:
        return True
    if not set(range(z + 1)) <= index_set:
        return False
    omitted = {variety.a[k - 1] for k in positive - index_set}
    return len(omitted) == 1


@dataclass(frozen=True)
class CriterionReport:
    threshold: Fraction
    max_term: Fraction
    argmax: tuple
    terms: tuple = field(repr=False, default=())


def criterion_maximum(variety: Rank2Variety, nu) -> CriterionReport:
    """Threshold vs the maximum of the finitely many candidate expressions.

    threshold = (V_0 + ... + V_r + (s+1) W) / (r+s); the candidates are
    (a) V_0, (b) the V-average, (c) W, and (d) the mixed terms
    (sum_{i in I} V_i + (s+1) W)/(|I| + s) over admissible I with |I| < r.
    Stable iff threshold > max, semistable iff >=.
    """
    vols = closed_form_volumes(variety, nu)
    r, s = variety.r, variety.s
    threshold = (sum(vols.V, Fraction(0)) + (s + 1) * vols.W) / (r + s)
    terms: list[tuple[tuple, Fraction]] = []
    terms.append((("a",), vols.V[0]))
    terms.append((("b",), sum(vols.V, Fraction(0)) / r))
    terms.append((("c",), vols.W))
    for size in range(0, r):
        for subset in combinations(range(r + 1), size):
            index_set = frozenset(subset)
            if not _index_set_admissible(variety, index_set):
                continue
            value = (
                sum((vols.V[i] for i in subset), Fraction(0)) + (s + 1) * vols.W
            ) / (size + s)
            terms.append((("d", subset), value))
    max_term = max(v for _, v in terms)
    argmax = next(tag for tag, v in terms if v == max_term)
    return CriterionReport(
        threshold=threshold, max_term=max_term, argmax=argmax, terms=tuple(terms)
    )


def criterion_status(variety: Rank2Variety, nu) -> StabilityStatus:
    report = criterion_maximum(variety, nu)
    if report.threshold > report.max_term:
        return StabilityStatus.STABLE
    if report.threshold == report.max_term:
        return StabilityStatus.SEMISTABLE_NOT_STABLE
    return StabilityStatus.UNSTABLE


def stability_polynomial(r: int, s: int, tol=Fraction(1, 10**9)) -> StabilityPolynomial:
    """p(x) = -(sum_{q<s} binom(r+s-1, q) x^q) + (s(r+1)/r) binom(r+s-1, s) x^s."""
    if r < 1 or s < 1:
        raise ValueError("need r >= 1 and s >= 1")
    coeffs = [Fraction(-comb(r + s - 1, q)) for q in range(s)]
    coeffs.append(Fraction(s * (r + 1), r) * comb(r + s - 1, s))
    poly = StabilityPolynomial(
        r=r, s=s, coeffs=tuple(coeffs), gamma_bracket=(Fraction(0), Fraction(0))
    )
    bracket = _bracket_positive_root(poly, Fraction(tol), r, s)
    return StabilityPolynomial(r=r, s=s, coeffs=tuple(coeffs), gamma_bracket=bracket)


def _bracket_positive_root(poly, tol: Fraction, r: int, s: int) -> tuple[Fraction, Fraction]:
    if s == 1:
        exact = Fraction(1, r + 1)
        return (exact, exact)
    lo = Fraction(0)
    hi = Fraction(1)
    while poly(hi) <= 0:
        if poly(hi) == 0:
            return (hi, hi)
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        val = poly(mid)
        if val == 0:
            return (mid, mid)
        if val < 0:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def gamma(r: int, s: int, tol=Fraction(1, 10**9)) -> tuple[Fraction, Fraction]:
    """Rational bracket of width <= tol around the positive root of p.

    Exact for s = 1 (gamma = 1/(r+1), returned as a width-0 bracket); for
    s >= 2 the bracket (lo, hi) satisfies p(lo) < 0 < p(hi) unless an exact
    rational root is hit, in which case lo = hi = gamma.
    """
    return stability_polynomial(r, s, tol=Fraction(tol)).gamma_bracket


def classify(variety: Rank2Variety, lam, mu) -> StabilityStatus:
    """Stability of the tangent bundle w.r.t. O_X(lambda) (x) pi^* O(mu).

    Twist (0,...,0,1): stable iff p(mu/lambda) < 0, semistable iff <= 0.
    Twist all zero (a product of projective spaces): semistable exactly for
    multiples of the anticanonical class, never stable.  Any other twist is
    unstable for every ample class; this includes the s = 1 borderline
    twists (0,...,0,2) and (0,...,0,1,1).
    """
    lam = Fraction(lam)
    mu = Fraction(mu)
    if lam <= 0 or mu <= 0:
        raise ValueError("lambda and mu must be positive")
    a = variety.a
    if all(x == 0 for x in a):
        if mu * (variety.r + 1) == lam * (variety.s + 1):
            return StabilityStatus.SEMISTABLE_NOT_STABLE
        return StabilityStatus.UNSTABLE
    if a[-1] == 1 and all(x == 0 for x in a[:-1]):
        value = stability_polynomial(variety.r, variety.s)(mu / lam)
        if value < 0:
            return StabilityStatus.STABLE
        if value == 0:
            return StabilityStatus.SEMISTABLE_NOT_STABLE
        return StabilityStatus.UNSTABLE
    return StabilityStatus.UNSTABLE


def binomial_identity_check(d, k: int) -> bool:
    """Vandermonde-type identity used by the volume closed forms:
    sum_{|k| = k} prod binom(d_i + k_i, d_i)  ==  binom(sum d_i + r + k, k)."""
    ds = [int(x) for x in d]
    if len(ds) < 2 or any(x < 0 for x in ds) or k < 0:
        raise ValueError("need r >= 1 parts and nonnegative inputs")
    r = len(ds) - 1
    lhs = 0
    for parts in _compositions(k, len(ds)):
        term = 1
        for di, ki in zip(ds, parts):
            term *= comb(di + ki, di)
        lhs += term
    rhs = comb(sum(ds) + r + k, k)
    return lhs == rhs
