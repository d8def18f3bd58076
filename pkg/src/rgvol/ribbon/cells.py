"""Twist fields, the combinatorial symplectic form, and cell integration.

Edge-length coordinates index the cycles of the edge pairing (ordered by
least half-edge).  Per boundary walk, the two-form adds
``d(len_i) ^ d(len_j)`` over ordered position pairs of the walk's edge
sequence (an edge may occur twice); half the total over all boundaries is
the form assembled by :func:`symplectic_form`.  Restricting to a fixed
perimeter level set eliminates one edge coordinate per boundary and
yields :func:`cell_form`, whose Pfaffian against the exact volume of the
positivity polytope integrates the top power of the form over one cell.
``brute_volume`` sums those cell integrals over all labeled trivalent
graphs, weighted by labeled automorphisms -- a direct, recursion-free
evaluation of the volume polynomial usable for small types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .. import linalg
from ..linalg import pfaffian
from .graphs import (
    RibbonGraph,
    RibbonGraphError,
    _check_half_edge,
    enumerate_graphs,
    graph_type,
    perm_cycles,
)
from .polytope import EmptyRegionError, polytope_volume

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def edge_index(graph: RibbonGraph) -> list[int]:
    """For each 0-based half-edge, the index of its edge."""
    out = [0] * graph.half_edges
    for idx, cycle in enumerate(graph.edges):
        for h in cycle:
            out[h] = idx
    return out


def half_edge_twist(graph: RibbonGraph, half_edge: int) -> tuple[int, ...]:
    """Coefficient vector over edges of the single-half-edge twist field.

    Alternating-sign sum over the other half-edges at the same vertex, in
    vertex order: the j-th successor contributes ``(-1)^j`` to its edge.
    """
    h = _check_half_edge(graph, half_edge)
    eidx = edge_index(graph)
    vec = [0] * graph.num_edges
    x = graph.vertex_perm[h]
    sign = -1
    while x != h:
        vec[eidx[x]] += sign
        sign = -sign
        x = graph.vertex_perm[x]
    return tuple(vec)


def twist_vector(graph: RibbonGraph, half_edge: int) -> tuple[int, ...]:
    """Edge-twist field of the edge through ``half_edge``: the two
    single-half-edge twists at its endpoints combined."""
    h = _check_half_edge(graph, half_edge)
    partner = graph.edge_perm[h] + 1
    a = half_edge_twist(graph, half_edge)
    b = half_edge_twist(graph, partner)
    return tuple(x + y for x, y in zip(a, b))


def _boundary_walks(
    graph: RibbonGraph, starts: Sequence[int] | None = None
) -> list[list[int]]:
    """Edge-index sequence of each boundary walk (cycle order, chosen start)."""
    eidx = edge_index(graph)
    boundary = graph.boundary_perm
    walks = []
    for idx, cycle in enumerate(graph.boundaries):
        if starts is None:
            start = cycle[0]
        else:
            start = int(starts[idx]) - 1
            if start not in cycle:
                raise ValueError(
                    f"start half-edge {starts[idx]} is not on boundary walk {idx + 1}"
                )
        seq = []
        x = start
        for _ in cycle:
            seq.append(eidx[x])
            x = boundary[x]
        walks.append(seq)
    return walks


def symplectic_form(
    graph: RibbonGraph, starts: Sequence[int] | None = None
) -> list[list[Fraction]]:
    """The two-form over all edge coordinates, as an antisymmetric matrix.

    Different ``starts`` choices shift the form by multiples of the
    perimeter differentials only, so the restriction to a fixed-perimeter
    level set does not depend on them.
    """
    e = graph.num_edges
    matrix = [[_ZERO] * e for _ in range(e)]
    for seq in _boundary_walks(graph, starts):
        m = len(seq)
        for i in range(m):
            for j in range(i + 1, m):
                a, b = seq[i], seq[j]
                if a == b:
                    continue
                matrix[a][b] += _HALF
                matrix[b][a] -= _HALF
    return matrix


def perimeter_matrix(graph: RibbonGraph) -> list[list[int]]:
    """Rows indexed by boundary label (1..n), columns by edge; entries in
    {0, 1, 2} count how often the walk uses the edge."""
    eidx = edge_index(graph)
    rows = [[0] * graph.num_edges for _ in range(graph.num_boundaries)]
    for idx, cycle in enumerate(graph.boundaries):
        row = rows[graph.boundary_labels[idx] - 1]
        for h in cycle:
            row[eidx[h]] += 1
    return rows


@dataclass(frozen=True)
class CellForm:
    """Restricted form on a fixed-perimeter cell.

    ``coordinates`` are the surviving (independent) edge indices, in
    increasing order; ``matrix`` is the antisymmetric form in those
    coordinates.
    """

    coordinates: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]


def _restriction(
    graph: RibbonGraph,
    starts: Sequence[int] | None,
    eliminate: Sequence[int] | None,
):
    """Shared elimination plumbing for cell_form and brute_volume.

    Returns (independent edges, dependent edges, solved matrix X with
    dependent = P_dep^-1 * rhs - X * independent, inverse of P_dep,
    restricted form matrix).
    """
    if not graph.is_trivalent():
        raise RibbonGraphError("cell restriction requires a trivalent graph")
    e = graph.num_edges
    n = graph.num_boundaries
    perims = perimeter_matrix(graph)
    if eliminate is None:
        _, pivots = linalg.rref(perims)
        if len(pivots) < n:
            raise RibbonGraphError("perimeter rows are dependent; no valid elimination")
        dependent = list(pivots)
    else:
        dependent = sorted(int(i) for i in eliminate)
        if len(dependent) != n or len(set(dependent)) != n:
            raise ValueError(f"need {n} distinct edges to eliminate, got {eliminate}")
        if any(i < 0 or i >= e for i in dependent):
            raise ValueError(f"edge index out of range in {eliminate}")
    independent = [i for i in range(e) if i not in dependent]
    p_dep = [[Fraction(perims[r][c]) for c in dependent] for r in range(n)]
    inv = linalg.invert_square(p_dep)
    if inv is None:
        raise RibbonGraphError(
            f"eliminating edges {tuple(dependent)} is degenerate "
            "(perimeter rows are dependent)"
        )
    p_ind = [[Fraction(perims[r][c]) for c in independent] for r in range(n)]
    # dependent lengths = inv * (L - P_ind * independent); X = inv * P_ind
    x_matrix = [
        [sum(inv[r][k] * p_ind[k][c] for k in range(n)) for c in range(len(independent))]
        for r in range(n)
    ]
    omega = symplectic_form(graph, starts)
    m = len(independent)
    # chart jacobian: full edge differentials in terms of the independent ones
    jac = [[_ZERO] * m for _ in range(e)]
    for col, edge in enumerate(independent):
        jac[edge][col] = Fraction(1)
    for r, edge in enumerate(dependent):
        for col in range(m):
            jac[edge][col] = -x_matrix[r][col]
    restricted = [
        [
            sum(jac[a][i] * omega[a][b] * jac[b][j] for a in range(e) for b in range(e))
            for j in range(m)
        ]
        for i in range(m)
    ]
    return independent, dependent, x_matrix, inv, restricted


def cell_form(
    graph: RibbonGraph,
    starts: Sequence[int] | None = None,
    eliminate: Sequence[int] | None = None,
) -> CellForm:
    """Restrict the form to a fixed-perimeter cell of a trivalent graph.

    ``starts`` picks the starting half-edge per boundary walk;
    ``eliminate`` picks which edge coordinates the perimeter equations
    remove (default: the lexicographically first invertible choice).
    """
    independent, _, _, _, restricted = _restriction(graph, starts, eliminate)
    return CellForm(
        coordinates=tuple(independent),
        matrix=tuple(tuple(row) for row in restricted),
    )


def _cell_contribution(graph: RibbonGraph, lengths: Sequence[Fraction]) -> Fraction:
    """Integral of the top form power over one labeled cell."""
    n = graph.num_boundaries
    e = graph.num_edges
    # perimeter_matrix rows are label-major, so the right side is just L
    rhs = [Fraction(lengths[label - 1]) for label in range(1, n + 1)]
    if e == n:
        # zero-dimensional cell: one metric graph if the perimeter system
        # has a positive solution, nothing otherwise
        solution = linalg.solve_square(
            [[Fraction(c) for c in row] for row in perimeter_matrix(graph)], rhs
        )
        if solution is None:
            return _ZERO
        return Fraction(1) if all(x > 0 for x in solution) else _ZERO
    independent, dependent, x_matrix, inv, restricted = _restriction(graph, None, None)
    density = abs(pfaffian(restricted))
    if not density:
        return _ZERO
    m = len(independent)
    offsets = [sum(inv[r][k] * rhs[k] for k in range(len(rhs))) for r in range(len(rhs))]
    inequalities = []
    for col in range(m):
        row = [_ZERO] * m
        row[col] = Fraction(-1)
        inequalities.append((row, _ZERO))
    for r in range(len(dependent)):
        inequalities.append((list(x_matrix[r]), offsets[r]))
    try:
        volume = polytope_volume(inequalities, m)
    except EmptyRegionError:
        return _ZERO
    return density * volume


def brute_volume(
    genus: int,
    boundaries: int,
    lengths: Sequence[Fraction | int],
    max_half_edges: int | None = None,
) -> Fraction:
    """Volume at fixed boundary lengths by direct cell integration.

    Sums ``|Pf| * polytope volume / labeled-automorphism order`` over all
    labeled trivalent graphs of the type.  Intended for small types; the
    half-edge budget guards the enumeration.
    """
    g, n = int(genus), int(boundaries)
    values = []
    for x in lengths:
        if isinstance(x, float):
            raise TypeError("lengths must be exact rationals, not floats")
        x = Fraction(x)
        if x <= 0:
            raise ValueError(f"boundary lengths must be positive, got {x}")
        values.append(x)
    if len(values) != n:
        raise ValueError(f"expected {n} lengths, got {len(values)}")
    total = _ZERO
    for cls in enumerate_graphs(g, n, trivalent_only=True, max_half_edges=max_half_edges):
        for labeling in range(cls.num_labelings):
            graph = cls.graph(labeling)
            piece = _cell_contribution(graph, values)
            if piece:
                total += piece / cls.labeled_aut_order
    return total


def duality_defect(graph: RibbonGraph, half_edge: int) -> bool:
    """Whether the twist-contraction identity fails at the given edge.

    The contraction of the form by the edge-twist field plus twice the
    edge differential must be a combination of perimeter rows; returns
    True when it is not.
    """
    omega = symplectic_form(graph)
    eidx = edge_index(graph)
    twist = twist_vector(graph, half_edge)
    e = graph.num_edges
    contraction = [
        sum(Fraction(twist[a]) * omega[a][b] for a in range(e)) for b in range(e)
    ]
    contraction[eidx[_check_half_edge(graph, half_edge)]] += 2
    perims = [[Fraction(c) for c in row] for row in perimeter_matrix(graph)]
    return not linalg.in_row_span(perims, contraction)
