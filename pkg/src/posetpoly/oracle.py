"""Exact polyhedral ground truth for small H-representations.

Vertices are found either by solving every ``d``-subset of rows at equality
(``method="subsets"``) or by an integer double-description pass over the
homogenized cone (``method="dd"``, the default).  Both are exact; the tests
check that they agree.  Faces are computed from vertex/row incidences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .polytope import HRep
from .poset import ResourceError

RationalPoint = tuple[Fraction, ...]

MAX_DIM = 8
MAX_ROWS = 64
MAX_FVECTOR_DIM = 6


class NotFullDimensionalError(ValueError):
    pass


class UnboundedError(ValueError):
    pass


def _guard(hrep: HRep, max_dim: int = MAX_DIM) -> None:
    if hrep.dim > max_dim:
        raise ResourceError(f"dimension {hrep.dim} exceeds oracle guard {max_dim}")
    if len(hrep.rows) > MAX_ROWS:
        raise ResourceError(f"{len(hrep.rows)} rows exceed oracle guard {MAX_ROWS}")


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = gcd(g, c)
    if g > 1:
        return tuple(c // g for c in v)
    return tuple(v)


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of rational vectors (fraction-free elimination)."""
    rows = [_integral(v) for v in vectors]
    rows = [r for r in rows if any(r)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            q = rows[i]
            if q[col]:
                rows[i] = _primitive([p[col] * qc - q[col] * pc for pc, qc in zip(p, q)])
        r += 1
        if r == len(rows):
            break
    return r


def _integral(v: Sequence) -> list[int]:
    den = 1
    for c in v:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    return [int(c * den) for c in v]


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (``-1`` for no points)."""
    if not points:
        return -1
    base = points[0]
    return rank([[p - b for p, b in zip(q, base)] for q in points[1:]])


def solve(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Unique solution of a square system, or ``None`` if singular."""
    n = len(matrix)
    aug = [[Fraction(c) for c in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        row = [c / pv for c in aug[col]]
        aug[col] = row
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], row)]
    return tuple(aug[i][n] for i in range(n))


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in matrix]
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
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# vertex enumeration


def _subset_vertices(hrep: HRep) -> list[RationalPoint]:
    d = hrep.dim
    rows = hrep.rows
    found = set()
    for subset in combinations(range(len(rows)), d):
        point = solve([rows[i][0] for i in subset], [rows[i][1] for i in subset])
        if point is not None and hrep.contains(point):
            found.add(point)
    return sorted(found)


def _dd_vertices(hrep: HRep) -> list[RationalPoint]:
    d = hrep.dim
    # cone {(t, s) : rhs*t - coeffs.s >= 0, t >= 0}; vertices are s/t on extreme rays
    cone = [(1,) + (0,) * d] + [(rhs,) + tuple(-c for c in coeffs) for coeffs, rhs in hrep.rows]
    n = d + 1
    basis: list[int] = []
    for i in range(len(cone)):
        if rank([cone[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
            if len(basis) == n:
                break
    if len(basis) < n:
        raise UnboundedError("constraint matrix has a nontrivial lineality space")

    # rays of the simplicial cone {x : cone[basis] x >= 0}: columns of its inverse
    rays: list[tuple[int, ...]] = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        col = solve([cone[i] for i in basis], e)
        assert col is not None
        rays.append(_primitive(_integral(col)))

    def dot(h, r):
        return sum(a * b for a, b in zip(h, r))

    processed = list(basis)
    zero = [frozenset(i for i in processed if dot(cone[i], r) == 0) for r in rays]
    for i in range(len(cone)):
        if i in basis:
            continue
        h = cone[i]
        vals = [dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zer]
        new_zero = [zero[k] for k in pos] + [zero[k] | {i} for k in zer]
        for p in pos:
            for q in neg:
                common = zero[p] & zero[q]
                if any(
                    k != p and k != q and common <= zero[k] for k in range(len(rays))
                ):
                    continue
                r = _primitive([vals[p] * b - vals[q] * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(r)
                new_zero.append(common | {i})
        rays, zero = new_rays, new_zero
        processed.append(i)

    points = set()
    for r in rays:
        if r[0] <= 0:
            if any(r):
                raise UnboundedError("polyhedron is unbounded")
            continue
        points.add(tuple(Fraction(c, r[0]) for c in r[1:]))
    return sorted(points)


def enumerate_vertices(hrep: HRep, method: str = "dd") -> list[RationalPoint]:
    """Exact vertex list, sorted lexicographically."""
    _guard(hrep)
    if hrep.dim == 0:
        return [()] if all(rhs >= 0 for _, rhs in hrep.rows) else []
    if method == "subsets":
        verts = _subset_vertices(hrep)
        if verts:
            _check_bounded(hrep)
        return verts
    if method == "dd":
        return _dd_vertices(hrep)
    raise ValueError(f"unknown method {method!r}")


def _check_bounded(hrep: HRep) -> None:
    """Raise unless the recession cone ``{y : A y <= 0}`` is ``{0}``.

    The cone is pointed once ``A`` has full column rank, so it is nonzero iff
    one of its extreme rays, the null direction of some rank ``d-1`` row
    subset, satisfies every row.
    """
    coeffs = [c for c, _ in hrep.rows]
    d = hrep.dim
    if rank(coeffs) < d:
        raise UnboundedError("constraint matrix does not have full column rank")
    for subset in combinations(range(len(coeffs)), d - 1):
        sub = [coeffs[i] for i in subset]
        if rank(sub) != d - 1:
            continue
        y = _null_direction(sub, d)
        for sign in (1, -1):
            if all(sum(c * sign * v for c, v in zip(row, y)) <= 0 for row in coeffs):
                raise UnboundedError("polyhedron is unbounded")


def _null_direction(rows: list, d: int) -> tuple[Fraction, ...]:
    # complete to a square system with a unit row that is independent of ``rows``
    for j in range(d):
        e = tuple(1 if k == j else 0 for k in range(d))
        y = solve(list(rows) + [e], [0] * len(rows) + [1])
        if y is not None:
            return y
    raise AssertionError("rows do not have rank d-1")


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class FaceLattice:
    vertices: tuple[RationalPoint, ...]
    facets: tuple[int, ...]
    incidence: tuple[tuple[bool, ...], ...]
    f_vector: tuple[int, ...]
    dim: int


def _tight_sets(hrep: HRep, vertices: Sequence[RationalPoint]) -> list[frozenset[int]]:
    out = []
    for coeffs, rhs in hrep.rows:
        out.append(
            frozenset(k for k, v in enumerate(vertices) if sum(c * x for c, x in zip(coeffs, v)) == rhs)
        )
    return out


def polytope_dim(hrep: HRep, vertices: Sequence[RationalPoint] | None = None) -> int:
    if vertices is None:
        vertices = enumerate_vertices(hrep)
    return affine_rank(vertices)


def irredundant_facets(hrep: HRep, vertices: Sequence[RationalPoint] | None = None) -> list[int]:
    """Indices of rows defining distinct facets (first index kept on duplicates)."""
    if vertices is None:
        vertices = enumerate_vertices(hrep)
    d = hrep.dim
    if affine_rank(vertices) != d:
        raise NotFullDimensionalError(
            f"polytope has dimension {affine_rank(vertices)} in R^{d}; facets need full dimension"
        )
    chosen: list[int] = []
    seen: set[frozenset[int]] = set()
    for i, tight in enumerate(_tight_sets(hrep, vertices)):
        if tight in seen:
            continue
        if affine_rank([vertices[k] for k in sorted(tight)]) == d - 1:
            chosen.append(i)
            seen.add(tight)
    return chosen


def face_lattice(hrep: HRep, vertices: Sequence[RationalPoint] | None = None) -> FaceLattice:
    """All nonempty proper faces, counted by dimension.

    Works for polytopes that are not full-dimensional too: facets are then the
    faces of dimension ``dim - 1``.
    """
    if vertices is None:
        vertices = enumerate_vertices(hrep)
    vertices = tuple(vertices)
    dim = affine_rank(vertices)
    if dim > MAX_FVECTOR_DIM:
        raise ResourceError(f"face lattice guard: dimension {dim} > {MAX_FVECTOR_DIM}")
    everything = frozenset(range(len(vertices)))
    tight = _tight_sets(hrep, vertices)
    generators = {t for t in tight if t and t != everything}
    faces: set[frozenset[int]] = set(generators)
    frontier = list(generators)
    while frontier:
        nxt = []
        for f in frontier:
            for g in generators:
                h = f & g
                if h and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        frontier = nxt
    f = [0] * max(dim, 0)
    dims: dict[frozenset[int], int] = {}
    for face in faces:
        k = affine_rank([vertices[i] for i in sorted(face)])
        dims[face] = k
        if 0 <= k < dim:
            f[k] += 1
    facet_sets = {face for face, k in dims.items() if k == dim - 1}
    facets = []
    used: set[frozenset[int]] = set()
    for i, t in enumerate(tight):
        if t in facet_sets and t not in used:
            facets.append(i)
            used.add(t)
    incidence = tuple(tuple(k in tight[i] for i in facets) for k in range(len(vertices)))
    return FaceLattice(vertices, tuple(facets), incidence, tuple(f), dim)


def f_vector(hrep: HRep, vertices: Sequence[RationalPoint] | None = None) -> tuple[int, ...]:
    _guard(hrep)
    return face_lattice(hrep, vertices).f_vector


def facet_count(hrep: HRep, vertices: Sequence[RationalPoint] | None = None) -> int:
    """Number of facets of the polytope inside its own affine hull."""
    _guard(hrep)
    if vertices is None:
        vertices = enumerate_vertices(hrep)
    dim = affine_rank(vertices)
    if dim <= 0:
        return 0
    tight = {t for t in _tight_sets(hrep, vertices) if len(t) < len(vertices)}
    return sum(1 for t in tight if affine_rank([vertices[k] for k in sorted(t)]) == dim - 1)


def euler_characteristic_ok(fv: Sequence[int]) -> bool:
    d = len(fv)
    return sum((-1) ** i * f for i, f in enumerate(fv)) == 1 - (-1) ** d
