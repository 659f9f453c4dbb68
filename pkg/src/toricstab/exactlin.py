"""Exact integer/rational linear algebra kernel.

Everything in this package that feeds a stability verdict runs through the
routines here, over ``fractions.Fraction`` or plain ``int``.  No floating
point is used anywhere on a decision path.

Vectors are tuples of Fractions (lattice or dual-lattice coordinates),
integer matrices are tuples of int tuples.  Subspaces of Q^n are kept in
reduced row echelon form, which is a canonical representative of the row
space: two subspaces are equal iff their ``SubspaceBasis`` objects compare
equal, so they can be deduplicated by hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]
IntegerMatrix = tuple[IntVector, ...]


class DimensionMismatch(ValueError):
    """Input vectors do not share one ambient dimension."""


class ZeroVector(ValueError):
    """A nonzero vector was required."""


class NotPrimitive(ValueError):
    """An integer vector with gcd of entries equal to 1 was required."""


def vec(entries) -> Vector:
    """Coerce an iterable of ints/Fractions/strings to an exact vector."""
    return tuple(Fraction(e) for e in entries)


def ivec(entries) -> IntVector:
    out = []
    for e in entries:
        f = Fraction(e)
        if f.denominator != 1:
            raise ValueError(f"expected integer entry, got {e}")
        out.append(f.numerator)
    return tuple(out)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)} differ")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def gcd_list(entries) -> int:
    g = 0
    for e in entries:
        g = gcd(g, abs(int(e)))
    return g


def primitive(v) -> IntVector:
    """Scale a nonzero rational vector to its primitive integer multiple.

    The result generates the same ray: positive multiple, integer entries,
    gcd 1.
    """
    fracs = [Fraction(e) for e in v]
    if all(f == 0 for f in fracs):
        raise ZeroVector("cannot normalize the zero vector")
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = gcd_list(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# rational elimination

def rref(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form; zero rows dropped.  Unique for the row space."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_rows: list[list[Fraction]] = []
    col = 0
    while mat and col < ncols:
        pivot = next((i for i, r in enumerate(mat) if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        row = mat.pop(pivot)
        row = [x / row[col] for x in row]
        mat = [
            [x - r[col] * p for x, p in zip(r, row)] if r[col] != 0 else r
            for r in mat
        ]
        pivot_rows.append(row)
        col += 1
    # eliminate above the pivots
    for i, row in enumerate(pivot_rows):
        lead = next(j for j, x in enumerate(row) if x != 0)
        for other in pivot_rows[:i]:
            if other[lead] != 0:
                c = other[lead]
                for j in range(len(other)):
                    other[j] -= c * row[j]
    return pivot_rows


@dataclass(frozen=True)
class SubspaceBasis:
    """A linear subspace of Q^n in canonical (reduced row echelon) form.

    Rows are linearly independent with strictly increasing pivot columns,
    pivot entries 1, zeros above and below each pivot.  Equal subspaces have
    equal representations.
    """

    ambient_dim: int
    rows: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        w = list(vec(v))
        if len(w) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector has length {len(w)}, ambient dimension is {self.ambient_dim}"
            )
        for row in self.rows:
            lead = next(j for j, x in enumerate(row) if x != 0)
            if w[lead] != 0:
                c = w[lead]
                for j in range(len(w)):
                    w[j] -= c * row[j]
        return all(x == 0 for x in w)

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(r) for r in other.rows)


def canonical_span(vectors, ambient_dim: int | None = None) -> SubspaceBasis:
    """Canonical basis of the rational span of ``vectors``.

    Idempotent and invariant under permutation of the input.  The ambient
    dimension must be given explicitly when the list is empty.
    """
    vs = [vec(v) for v in vectors]
    if vs:
        n = len(vs[0])
        if any(len(v) != n for v in vs):
            raise DimensionMismatch("vectors of mixed lengths")
        if ambient_dim is not None and ambient_dim != n:
            raise DimensionMismatch(
                f"vectors have length {n}, ambient dimension given as {ambient_dim}"
            )
    else:
        if ambient_dim is None:
            raise DimensionMismatch("empty span needs an explicit ambient dimension")
        n = ambient_dim
    reduced = rref([list(v) for v in vs])
    return SubspaceBasis(n, tuple(tuple(r) for r in reduced))


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[Vector]:
    """Basis of the right kernel {x : rows @ x = 0} over Q."""
    reduced = rref(rows)
    pivots = []
    for row in reduced:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return canonical_span([], ambient_dim=n)
    # x in A∩B  <=>  x = alpha·A = beta·B; solve for (alpha, beta).
    cols = a.dim + b.dim
    eqs = []
    for j in range(n):
        eqs.append(
            [row[j] for row in a.rows] + [-row[j] for row in b.rows]
        )
    gens = []
    for coeffs in nullspace(eqs, cols):
        alpha = coeffs[: a.dim]
        x = [Fraction(0)] * n
        for c, row in zip(alpha, a.rows):
            for j in range(n):
                x[j] += c * row[j]
        gens.append(x)
    return canonical_span(gens, ambient_dim=n)


def solve_square(mat: list[list[Fraction]], rhs: list[Fraction]) -> Vector:
    """Solve an invertible square rational system by Gaussian elimination."""
    n = len(mat)
    m = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                c = m[i][col]
                m[i] = [x - c * p for x, p in zip(m[i], m[col])]
    return tuple(m[i][n] for i in range(n))


def invert_square(mat) -> tuple[Vector, ...]:
    n = len(mat)
    cols = []
    for k in range(n):
        rhs = [Fraction(int(i == k)) for i in range(n)]
        cols.append(solve_square([list(r) for r in mat], rhs))
    # cols[k] is the k-th column of the inverse
    return tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# integer elimination

def det_int(mat) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in mat]
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hermite_row_reduce(mat: list[list[int]], nrows: int) -> tuple[list[list[int]], list[list[int]], int]:
    """Row Hermite form with transformation: returns (H, U, rank), U @ mat = H.

    U is unimodular; H is in row echelon form with positive pivots and
    reduced entries above each pivot.
    """
    H = [[int(x) for x in row] for row in mat]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    ncols = len(H[0]) if H else 0
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if H[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][j]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            changed = False
            for i in range(r + 1, nrows):
                if H[i][j] != 0:
                    q = H[i][j] // H[r][j]
                    if q != 0:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][j] != 0:
                        changed = True
            if not changed:
                break
        if r < nrows and H[r][j] != 0:
            if H[r][j] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = H[i][j] // H[r][j]
                if q != 0:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return H, U, r


def extended_gcd_vector(v) -> tuple[int, IntVector]:
    """Return (g, w) with <w, v> = g = gcd(v); all integers."""
    entries = [int(x) for x in v]
    if all(x == 0 for x in entries):
        raise ZeroVector("gcd of the zero vector")
    g = 0
    w = [0] * len(entries)
    for i, x in enumerate(entries):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            w[i] = 1 if x > 0 else -1
            continue
        # extended Euclid on (g, x)
        old_r, r = g, x
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        w = [old_s * a for a in w]
        w[i] = old_t
        g = old_r
    return g, tuple(w)


def hyperplane_lattice_basis(normal) -> IntegerMatrix:
    """Lattice basis of {u in Z^n : <u, normal> = 0} for a primitive normal.

    The returned (n-1) x n rows generate the full hyperplane lattice (they
    are saturated) and extend to a basis of Z^n: stacking any integer w with
    <w, normal> = 1 on top gives a matrix of determinant +-1.
    """
    v = ivec(normal)
    if all(x == 0 for x in v):
        raise ZeroVector("hyperplane of the zero vector")
    if gcd_list(v) != 1:
        raise NotPrimitive(f"gcd of {v} is {gcd_list(v)}, expected 1")
    n = len(v)
    column = [[x] for x in v]
    H, U, rank = hermite_row_reduce(column, n)
    assert rank == 1 and H[0][0] == 1
    return tuple(tuple(row) for row in U[1:])


def saturated_span_basis(vectors, ambient_dim: int) -> IntegerMatrix:
    """Basis of span_Q(vectors) ∩ Z^n, i.e. the saturation of the generated lattice."""
    n = ambient_dim
    span = canonical_span(list(vectors) or [], ambient_dim=n)
    d = span.dim
    if d == 0:
        return ()
    if d == n:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    # The span is the kernel of its normal equations; the integer kernel of an
    # integer matrix is automatically saturated.
    normals = [list(x) for x in nullspace([list(r) for r in span.rows], n)]
    int_normals = [primitive(x) for x in normals]
    transposed = [[int_normals[k][j] for k in range(len(int_normals))] for j in range(n)]
    H, U, rank = hermite_row_reduce(transposed, n)
    assert rank == n - d
    return tuple(tuple(row) for row in U[rank:])


def lattice_coordinates(points, basis: IntegerMatrix) -> list[IntVector]:
    """Express integer points of the lattice spanned by ``basis`` in basis coordinates."""
    rows = [list(map(Fraction, b)) for b in basis]
    d = len(rows)
    coords = []
    for p in points:
        # solve x @ basis = p  (least-squares-free: basis rows independent)
        eqs = [[rows[i][j] for i in range(d)] for j in range(len(p))]
        sol = _solve_overdetermined(eqs, [Fraction(x) for x in p])
        coords.append(tuple(int(x) for x in sol))
    return coords


def _solve_overdetermined(eqs: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a consistent full-column-rank rational system."""
    ncols = len(eqs[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(eqs)]
    reduced = rref(aug)
    sol = [Fraction(0)] * ncols
    for row in reduced:
        lead = next(j for j, x in enumerate(row) if x != 0)
        if lead == ncols:
            raise ValueError("inconsistent linear system")
        sol[lead] = row[ncols]
    return sol


def rank_of(vectors) -> int:
    return len(rref([list(map(Fraction, v)) for v in vectors]))


def all_subsets_up_to(items, max_size: int):
    """All nonempty subsets of ``items`` of size at most ``max_size``, in a fixed order."""
    for size in range(1, max_size + 1):
        yield from combinations(items, size)
