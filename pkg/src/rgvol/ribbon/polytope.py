"""Exact Lebesgue volumes of rational convex polytopes.

Input is a halfspace system ``a . x <= b`` with rational data.  The
volume comes from exact vertex enumeration followed by a recursive star
triangulation of the hull; everything is Fraction arithmetic.  Intended
for the low-dimensional fixed-perimeter cells of trivalent graphs --
complexity grows quickly with the dimension.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..algebra import factorial
from ..linalg import determinant, rank, rref, solve_square

Halfspace = tuple[Sequence[Fraction], Fraction]

_ZERO = Fraction(0)


class EmptyRegionError(ValueError):
    """The halfspace system has no feasible point."""


class UnboundedRegionError(ValueError):
    """The feasible region has a recession direction."""


def _normalize(inequalities, dimension: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    out = []
    for coeffs, bound in inequalities:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != dimension:
            raise ValueError(
                f"inequality has {len(coeffs)} coefficients, expected {dimension}"
            )
        out.append((coeffs, Fraction(bound)))
    return out


def _feasible(ineqs, dimension: int) -> bool:
    """Fourier-Motzkin feasibility for ``A x <= b``."""
    system = [list(a) + [b] for a, b in ineqs]
    for var in range(dimension):
        positive, negative, rest = [], [], []
        for row in system:
            if row[0] > 0:
                positive.append(row)
            elif row[0] < 0:
                negative.append(row)
            else:
                rest.append(row[1:])
        combined = rest
        for p in positive:
            for q in negative:
                # eliminate the leading variable from the pair
                combined.append(
                    [p[0] * q[i] - q[0] * p[i] for i in range(1, len(p))]
                )
        system = combined
    return all(row[-1] >= 0 for row in system)


def _recession_direction(ineqs, dimension: int) -> bool:
    """Whether ``{d : A d <= 0}`` contains a nonzero direction."""
    rows = [list(a) for a, _ in ineqs]
    if rank(rows) < dimension:
        return True
    for subset in combinations(range(len(rows)), dimension - 1):
        sub = [rows[i] for i in subset]
        if rank(sub) != dimension - 1:
            continue
        reduced, pivots = rref(sub)
        free = next(c for c in range(dimension) if c not in pivots)
        direction = [_ZERO] * dimension
        direction[free] = Fraction(1)
        for r, col in enumerate(pivots):
            direction[col] = -reduced[r][free]
        products = [sum(c * d for c, d in zip(a, direction)) for a in rows]
        if all(p <= 0 for p in products) or all(p >= 0 for p in products):
            return True
    return False


def _vertices(ineqs, dimension: int) -> list[tuple[Fraction, ...]]:
    verts: dict[tuple[Fraction, ...], None] = {}
    for subset in combinations(range(len(ineqs)), dimension):
        matrix = [list(ineqs[i][0]) for i in subset]
        rhs = [ineqs[i][1] for i in subset]
        point = solve_square(matrix, rhs)
        if point is None:
            continue
        if all(sum(c * x for c, x in zip(a, point)) <= b for a, b in ineqs):
            verts[tuple(point)] = None
    return list(verts)


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    origin = points[0]
    return rank([[x - o for x, o in zip(p, origin)] for p in points[1:]])


def _hull_facets(points, dimension: int) -> list[tuple[int, ...]]:
    """Vertex index sets of the hull facets (maximal supporting sets)."""
    facets: dict[tuple[tuple[Fraction, ...], Fraction], set[int]] = {}
    for subset in combinations(range(len(points)), dimension):
        base = points[subset[0]]
        span = [[points[i][c] - base[c] for c in range(dimension)] for i in subset[1:]]
        if rank(span) != dimension - 1:
            continue
        reduced, pivots = rref(span)
        free = next(c for c in range(dimension) if c not in pivots)
        normal = [_ZERO] * dimension
        normal[free] = Fraction(1)
        for r, col in enumerate(pivots):
            normal[col] = -reduced[r][free]
        offset = sum(nc * bc for nc, bc in zip(normal, base))
        values = [sum(nc * pc for nc, pc in zip(normal, p)) for p in points]
        side_hi = all(val <= offset for val in values)
        side_lo = all(val >= offset for val in values)
        if not (side_hi or side_lo):
            continue
        if side_lo and not side_hi:
            normal = [-nc for nc in normal]
            offset = -offset
            values = [-val for val in values]
        key = (tuple(normal), offset)
        members = {i for i, val in enumerate(values) if val == offset}
        facets.setdefault(key, set()).update(members)
    return [tuple(sorted(members)) for members in facets.values()]


def _triangulate(points, dimension: int) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Partition the hull of ``points`` into simplices (vertex tuples)."""
    points = list(points)
    if dimension == 0:
        return [(points[0],)]
    if dimension == 1:
        coords = sorted(points)
        return [(coords[0], coords[-1])]
    if len(points) == dimension + 1:
        return [tuple(points)]
    apex_index = min(range(len(points)), key=lambda i: points[i])
    apex = points[apex_index]
    simplices = []
    for facet in _hull_facets(points, dimension):
        if apex_index in facet:
            continue
        facet_points = [points[i] for i in facet]
        # project the facet into its hyperplane chart: drop one coordinate
        # along which the facet varies; the drop is injective on the facet.
        for drop in range(dimension):
            projected = [p[:drop] + p[drop + 1 :] for p in facet_points]
            if _affine_rank(projected) == dimension - 1:
                break
        else:
            continue
        back = {p[:drop] + p[drop + 1 :]: p for p in facet_points}
        for sub in _triangulate(projected, dimension - 1):
            simplices.append(tuple(back[q] for q in sub) + (apex,))
    return simplices


def _simplex_volume(simplex, dimension: int) -> Fraction:
    base = simplex[-1]
    matrix = [
        [simplex[i][c] - base[c] for c in range(dimension)] for i in range(dimension)
    ]
    return abs(determinant(matrix)) / factorial(dimension)


def polytope_volume(inequalities, dimension: int) -> Fraction:
    """Exact volume of ``{x : a . x <= b for each (a, b)}``.

    Returns 0 for feasible regions of lower dimension; raises
    :class:`EmptyRegionError` / :class:`UnboundedRegionError` otherwise.
    """
    dimension = int(dimension)
    if dimension < 0:
        raise ValueError(f"dimension must be nonnegative, got {dimension}")
    ineqs = _normalize(inequalities, dimension)
    if dimension == 0:
        if any(b < 0 for _, b in ineqs):
            raise EmptyRegionError("inconsistent zero-dimensional system")
        return Fraction(1)
    verts = _vertices(ineqs, dimension)
    if not verts and not _feasible(ineqs, dimension):
        raise EmptyRegionError("the halfspace system has no feasible point")
    if _recession_direction(ineqs, dimension):
        raise UnboundedRegionError("the feasible region is unbounded")
    if not verts:
        raise EmptyRegionError("no vertices found for a bounded region")
    if _affine_rank(verts) < dimension:
        return _ZERO
    return sum(
        (_simplex_volume(simplex, dimension) for simplex in _triangulate(verts, dimension)),
        _ZERO,
    )
