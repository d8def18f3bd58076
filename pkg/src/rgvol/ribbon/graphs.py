"""Ribbon graphs as permutation pairs, with enumeration up to equivalence.

A graph on ``2k`` half-edges is a pair of permutations: ``vertex_perm``
whose cycles are the vertices (each cycle the counterclockwise ordering of
the half-edges there) and ``edge_perm``, a fixed-point-free involution
pairing half-edges into edges.  Boundary walks are the cycles of the
derived permutation ``boundary_perm = vertex_perm^-1 o edge_perm`` (edge
pairing applied first).  Internally half-edges are 0-based; every public
cycle notation and the JSON interchange format are 1-based.

Two graphs are equivalent when a bijection of half-edges conjugates one
permutation pair into the other.  Enumeration fixes the vertex permutation
per degree partition, runs over all pairings, and deduplicates through a
canonical rooted traversal code; the roots realising the minimal code
recover the automorphism group for free.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

Perm = tuple[int, ...]

#: Environment variable bounding the number of half-edges enumeration will touch.
HALF_EDGE_LIMIT_ENV = "RGVOL_MAX_HALF_EDGES"
DEFAULT_HALF_EDGE_LIMIT = 12


class RibbonGraphError(ValueError):
    """Permutation data that does not define a valid ribbon graph."""


class HalfEdgeLimitError(RuntimeError):
    """An enumeration request exceeding the configured half-edge budget."""


def half_edge_limit(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    return int(os.environ.get(HALF_EDGE_LIMIT_ENV, DEFAULT_HALF_EDGE_LIMIT))


# ---------------------------------------------------------------------------
# permutation helpers (0-based mapping tuples)

def perm_cycles(perm: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its least element, sorted by it."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append(tuple(cycle))
    return cycles


def perm_from_cycles(cycles: Iterable[Sequence[int]], size: int) -> Perm:
    """Mapping tuple from 0-based cycles; uncovered points stay fixed."""
    out = list(range(size))
    covered = set()
    for cycle in cycles:
        for x in cycle:
            if not 0 <= x < size:
                raise RibbonGraphError(f"half-edge {x + 1} outside 1..{size}")
            if x in covered:
                raise RibbonGraphError(f"half-edge {x + 1} appears in two cycles")
            covered.add(x)
        for a, b in zip(cycle, cycle[1:]):
            out[a] = b
        out[cycle[-1]] = cycle[0]
    return tuple(out)


def perm_inverse(perm: Perm) -> Perm:
    out = [0] * len(perm)
    for i, image in enumerate(perm):
        out[image] = i
    return tuple(out)


def perm_compose(after: Perm, before: Perm) -> Perm:
    """The permutation applying ``before`` first, then ``after``."""
    return tuple(after[before[i]] for i in range(len(before)))


def _is_permutation(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(len(perm)))


def cycles_one_based(perm: Perm) -> list[list[int]]:
    return [[x + 1 for x in cycle] for cycle in perm_cycles(perm)]


# ---------------------------------------------------------------------------
# the graph type

@dataclass(frozen=True)
class RibbonGraph:
    """Validated ribbon graph with labeled boundaries.

    ``boundary_labels[i]`` is the label (1..n) of the i-th boundary cycle,
    boundary cycles being ordered by their least half-edge.
    """

    vertex_perm: Perm
    edge_perm: Perm
    boundary_labels: Perm = field(default=())

    def __post_init__(self):
        v, e = tuple(self.vertex_perm), tuple(self.edge_perm)
        object.__setattr__(self, "vertex_perm", v)
        object.__setattr__(self, "edge_perm", e)
        size = len(v)
        if size == 0 or size % 2 or len(e) != size:
            raise RibbonGraphError(
                f"need an even positive number of half-edges, got {size} and {len(e)}"
            )
        if not _is_permutation(v):
            raise RibbonGraphError("vertex data is not a permutation")
        if not _is_permutation(e):
            raise RibbonGraphError("edge data is not a permutation")
        for i in range(size):
            if e[i] == i:
                raise RibbonGraphError(f"edge pairing fixes half-edge {i + 1}")
            if e[e[i]] != i:
                raise RibbonGraphError("edge pairing is not an involution")
        for cycle in perm_cycles(v):
            if len(cycle) < 3:
                raise RibbonGraphError(
                    f"vertex cycle {tuple(x + 1 for x in cycle)} has length {len(cycle)} < 3"
                )
        if not _transitive(v, e):
            raise RibbonGraphError("the permutation pair does not act transitively")
        labels = tuple(self.boundary_labels)
        n = len(perm_cycles(self.boundary_perm))
        if not labels:
            labels = tuple(range(1, n + 1))
        if sorted(labels) != list(range(1, n + 1)):
            raise RibbonGraphError(
                f"boundary labels {labels} are not a bijection onto 1..{n}"
            )
        object.__setattr__(self, "boundary_labels", labels)

    @property
    def half_edges(self) -> int:
        return len(self.vertex_perm)

    @property
    def boundary_perm(self) -> Perm:
        """Derived boundary permutation (edge pairing applied first)."""
        return perm_compose(perm_inverse(self.vertex_perm), self.edge_perm)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.vertex_perm)

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.edge_perm)

    @property
    def boundaries(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.boundary_perm)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_boundaries(self) -> int:
        return len(self.boundaries)

    def degree(self, half_edge: int) -> int:
        """Degree of the vertex carrying the (1-based) half-edge."""
        h = _check_half_edge(self, half_edge)
        for cycle in self.vertices:
            if h in cycle:
                return len(cycle)
        raise AssertionError("unreachable")

    def is_trivalent(self) -> bool:
        return all(len(cycle) == 3 for cycle in self.vertices)

    def label_of(self, half_edge: int) -> int:
        """Boundary label of the walk through the (1-based) half-edge."""
        h = _check_half_edge(self, half_edge)
        for idx, cycle in enumerate(self.boundaries):
            if h in cycle:
                return self.boundary_labels[idx]
        raise AssertionError("unreachable")


def _check_half_edge(graph: RibbonGraph, half_edge: int) -> int:
    h = int(half_edge) - 1
    if not 0 <= h < graph.half_edges:
        raise ValueError(f"half-edge {half_edge} outside 1..{graph.half_edges}")
    return h


def _transitive(v: Perm, e: Perm) -> bool:
    size = len(v)
    seen = [False] * size
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in (v[x], e[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == size


def make_graph(
    vertex_cycles: Iterable[Sequence[int]],
    edge_cycles: Iterable[Sequence[int]],
    labels: Mapping[int, int] | None = None,
    half_edges: int | None = None,
) -> RibbonGraph:
    """Build a graph from 1-based cycle notation.

    ``labels`` optionally maps each boundary representative (the least
    half-edge on the walk, 1-based) to its label; the default labels
    boundaries 1..n in order of least half-edge.
    """
    vertex_cycles = [tuple(int(x) for x in c) for c in vertex_cycles]
    edge_cycles = [tuple(int(x) for x in c) for c in edge_cycles]
    if half_edges is None:
        elements = [x for c in vertex_cycles + edge_cycles for x in c]
        if not elements:
            raise RibbonGraphError("cannot infer the number of half-edges")
        half_edges = max(elements)
    v = perm_from_cycles([[x - 1 for x in c] for c in vertex_cycles], half_edges)
    e = perm_from_cycles([[x - 1 for x in c] for c in edge_cycles], half_edges)
    graph = RibbonGraph(v, e)
    if labels is None:
        return graph
    reps = [cycle[0] + 1 for cycle in graph.boundaries]
    normalized = {int(k): int(val) for k, val in labels.items()}
    if sorted(normalized) != sorted(reps):
        raise RibbonGraphError(
            f"labeling keys {sorted(normalized)} do not match boundary "
            f"representatives {sorted(reps)}"
        )
    return RibbonGraph(v, e, tuple(normalized[rep] for rep in reps))


def graph_type(graph: RibbonGraph) -> tuple[int, int]:
    """The pair (genus, boundary count)."""
    v = graph.num_vertices
    e = graph.num_edges
    n = graph.num_boundaries
    euler = v - e + n
    if euler % 2 or euler > 2:
        raise RibbonGraphError(f"v - e + n = {euler} does not give a valid genus")
    return (2 - euler) // 2, n


# ---------------------------------------------------------------------------
# canonical codes, automorphisms, enumeration

def _rooted_code(v: Perm, e: Perm, root: int) -> tuple[tuple[int, ...], Perm]:
    """Traversal code from ``root`` plus the relabeling map old -> new.

    The code depends only on the isomorphism class of the rooted pair, so
    equality of minimal codes is graph equivalence and the minimising
    roots enumerate the automorphism group.
    """
    size = len(v)
    new = [-1] * size
    order = [root]
    new[root] = 0
    i = 0
    while i < len(order):
        h = order[i]
        for nxt in (v[h], e[h]):
            if new[nxt] < 0:
                new[nxt] = len(order)
                order.append(nxt)
        i += 1
    code = tuple(new[v[h]] for h in order) + tuple(new[e[h]] for h in order)
    return code, tuple(new)


def _canonicalize(v: Perm, e: Perm) -> tuple[tuple[int, ...], Perm, Perm]:
    """Minimal code and the relabeled canonical permutation pair."""
    best_code = None
    best_map = None
    for root in range(len(v)):
        code, relabel = _rooted_code(v, e, root)
        if best_code is None or code < best_code:
            best_code, best_map = code, relabel
    size = len(v)
    canon_v = [0] * size
    canon_e = [0] * size
    for old in range(size):
        canon_v[best_map[old]] = best_map[v[old]]
        canon_e[best_map[old]] = best_map[e[old]]
    return best_code, tuple(canon_v), tuple(canon_e)


def _automorphism_perms(v: Perm, e: Perm) -> list[Perm]:
    codes = [_rooted_code(v, e, root) for root in range(len(v))]
    minimal = min(code for code, _ in codes)
    base = next(relabel for code, relabel in codes if code == minimal)
    inverse_maps = [perm_inverse(relabel) for code, relabel in codes if code == minimal]
    return [perm_compose(inv, base) for inv in inverse_maps]


def automorphisms(graph: RibbonGraph, labeled: bool = False) -> list[Perm]:
    """All equivalences of the graph with itself, as 0-based mapping tuples.

    With ``labeled=True`` only those preserving every boundary label.
    """
    perms = _automorphism_perms(graph.vertex_perm, graph.edge_perm)
    if not labeled:
        return perms
    label_of = [0] * graph.half_edges
    for idx, cycle in enumerate(graph.boundaries):
        for h in cycle:
            label_of[h] = graph.boundary_labels[idx]
    return [
        alpha
        for alpha in perms
        if all(label_of[alpha[h]] == label_of[h] for h in range(graph.half_edges))
    ]


@dataclass(frozen=True)
class RibbonClass:
    """One equivalence class of graphs with its inequivalent labelings."""

    vertex_perm: Perm
    edge_perm: Perm
    aut_order: int
    labeled_aut_order: int
    labelings: tuple[tuple[int, ...], ...]

    @property
    def half_edges(self) -> int:
        return len(self.vertex_perm)

    @property
    def num_labelings(self) -> int:
        return len(self.labelings)

    def graph(self, labeling: int = 0) -> RibbonGraph:
        return RibbonGraph(self.vertex_perm, self.edge_perm, self.labelings[labeling])


def _matchings(size: int) -> Iterator[Perm]:
    """All fixed-point-free involutions of range(size)."""
    perm = [0] * size

    def rec(free: tuple[int, ...]) -> Iterator[Perm]:
        if not free:
            yield tuple(perm)
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            perm[a], perm[b] = b, a
            yield from rec(free[1:idx] + free[idx + 1 :])

    yield from rec(tuple(range(size)))


def _degree_partitions(total: int, parts: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into ``parts`` descending parts, each >= 3."""
    if parts == 1:
        if total >= 3 and (cap is None or total <= cap):
            yield (total,)
        return
    top = total - 3 * (parts - 1)
    if cap is not None:
        top = min(top, cap)
    for first in range(top, 2, -1):
        for tail in _degree_partitions(total - first, parts - 1, first):
            yield (first,) + tail


def _block_vertex_perm(partition: Sequence[int]) -> Perm:
    perm = []
    start = 0
    for part in partition:
        perm.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return tuple(perm)


def _boundary_count(v: Perm, e: Perm) -> int:
    inv = perm_inverse(v)
    size = len(v)
    seen = [False] * size
    count = 0
    for start in range(size):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = inv[e[x]]
    return count


def _labeling_data(
    v: Perm, e: Perm, auts: list[Perm]
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Labeled automorphism order and orbit-minimal boundary labelings."""
    boundary = perm_compose(perm_inverse(v), e)
    cycles = perm_cycles(boundary)
    n = len(cycles)
    index_of = {}
    for idx, cycle in enumerate(cycles):
        for h in cycle:
            index_of[h] = idx
    sigmas = {tuple(index_of[alpha[cycle[0]]] for cycle in cycles) for alpha in auts}
    identity = tuple(range(n))
    kernel = sum(
        1
        for alpha in auts
        if tuple(index_of[alpha[cycle[0]]] for cycle in cycles) == identity
    )
    reps = []
    for labels in permutations(range(1, n + 1)):
        if labels == min(tuple(labels[s[i]] for i in range(n)) for s in sigmas):
            reps.append(labels)
    return kernel, tuple(sorted(reps))


_CLASS_CACHE: dict[tuple[int, int, bool], tuple[RibbonClass, ...]] = {}


def clear_enumeration_cache() -> None:
    _CLASS_CACHE.clear()


def enumerate_graphs(
    genus: int,
    boundaries: int,
    trivalent_only: bool = False,
    max_half_edges: int | None = None,
) -> list[RibbonClass]:
    """All equivalence classes of type ``(g, n)``, with automorphism data.

    Classes come back in a deterministic order (by half-edge count, then
    canonical code).  Raises :class:`HalfEdgeLimitError` when the type
    needs more half-edges than the configured budget allows.
    """
    g, n = int(genus), int(boundaries)
    if n < 1 or g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"({g}, {n}) is not a stable type")
    max_edges = 6 * g - 6 + 3 * n
    limit = half_edge_limit(max_half_edges)
    if 2 * max_edges > limit:
        raise HalfEdgeLimitError(
            f"type ({g}, {n}) needs up to {2 * max_edges} half-edges; "
            f"limit is {limit} (raise {HALF_EDGE_LIMIT_ENV} to override)"
        )
    key = (g, n, bool(trivalent_only))
    cached = _CLASS_CACHE.get(key)
    if cached is not None:
        return list(cached)

    found: dict[tuple[int, tuple[int, ...]], RibbonClass] = {}
    min_edges = max(1, n - 1 + (1 if g else 0))  # loose lower bound; filters below decide
    for e in range(min_edges, max_edges + 1):
        v_count = e + 2 - 2 * g - n
        if v_count < 1 or 2 * e < 3 * v_count:
            continue
        for partition in _degree_partitions(2 * e, v_count):
            if trivalent_only and any(part != 3 for part in partition):
                continue
            vperm = _block_vertex_perm(partition)
            for eperm in _matchings(2 * e):
                if not _transitive(vperm, eperm):
                    continue
                if _boundary_count(vperm, eperm) != n:
                    continue
                code, canon_v, canon_e = _canonicalize(vperm, eperm)
                dedup_key = (2 * e, code)
                if dedup_key in found:
                    continue
                auts = _automorphism_perms(canon_v, canon_e)
                kernel, labelings = _labeling_data(canon_v, canon_e, auts)
                found[dedup_key] = RibbonClass(
                    vertex_perm=canon_v,
                    edge_perm=canon_e,
                    aut_order=len(auts),
                    labeled_aut_order=kernel,
                    labelings=labelings,
                )
    classes = tuple(found[k] for k in sorted(found))
    _CLASS_CACHE[key] = classes
    return list(classes)


# ---------------------------------------------------------------------------
# interchange format

def to_interchange(graph: RibbonGraph) -> dict:
    """JSON-ready description: cycles 1-based, labels keyed by representative."""
    reps = [cycle[0] + 1 for cycle in graph.boundaries]
    return {
        "half_edges": graph.half_edges,
        "gamma0": cycles_one_based(graph.vertex_perm),
        "gamma1": cycles_one_based(graph.edge_perm),
        "labels": {str(rep): label for rep, label in zip(reps, graph.boundary_labels)},
    }


def from_interchange(data: Mapping) -> RibbonGraph:
    """Inverse of :func:`to_interchange`."""
    return make_graph(
        data["gamma0"],
        data["gamma1"],
        labels={int(k): int(v) for k, v in data.get("labels", {}).items()},
        half_edges=int(data["half_edges"]),
    )
