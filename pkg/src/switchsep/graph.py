"""Simple graphs as tuples of neighbourhood bitmasks, with Seidel switching.

Vertices are the integers ``0..order-1``.  Row ``v`` of a :class:`Graph` is an
int whose bit ``u`` is set iff ``{u, v}`` is an edge.  Python ints have no
width limit, so the same code path serves every order; the numpy kernels in
:mod:`switchsep.enumeration` handle the bulk small-order work.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

VertexSet = frozenset  # frozenset[int]; the public face of a vertex bitmask


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Sorted list of the set bits of ``mask``."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


@dataclass(frozen=True)
class Graph:
    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 0 or len(self.rows) != self.order:
            raise ValueError(f"expected {self.order} adjacency rows, got {len(self.rows)}")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.order - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in members(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {{{u}, {v}}} out of range for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> Graph:
        full = (1 << order) - 1
        return cls(order, tuple(full ^ (1 << v) for v in range(order)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(members(self.rows[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.order):
            for u in members(self.rows[v] >> (v + 1)):
                yield v, v + 1 + u

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={list(self.edges())})"


@dataclass(frozen=True)
class TwoGraph:
    """The triples of a graph that induce an odd number of edges."""

    order: int
    odd_triples: frozenset[tuple[int, int, int]]


def check_vertex_set(g: Graph, vertices: Iterable[int]) -> int:
    """Validate ``vertices`` against ``g`` and return them as a bitmask."""
    m = 0
    for v in vertices:
        if not isinstance(v, int) or not 0 <= v < g.order:
            raise ValueError(f"vertex {v!r} out of range for order {g.order}")
        m |= 1 << v
    return m


def switch_mask(g: Graph, u: int) -> Graph:
    full = g.vertex_mask
    rest = full & ~u
    rows = tuple(
        row ^ (rest if u >> v & 1 else u) for v, row in enumerate(g.rows)
    )
    return Graph(g.order, rows)


def switch(g: Graph, u: Iterable[int]) -> Graph:
    """Seidel switching: toggle every pair with exactly one end in ``u``."""
    return switch_mask(g, check_vertex_set(g, u))


def cross_parity(g: Graph, a: int, b: int, c: int, d: int) -> int:
    """Number of edges among {a,c}, {a,d}, {b,c}, {b,d}."""
    quad = (a, b, c, d)
    check_vertex_set(g, quad)
    if len(set(quad)) != 4:
        raise ValueError(f"vertices must be pairwise distinct, got {quad}")
    ra, rb = g.rows[a], g.rows[b]
    return (ra >> c & 1) + (ra >> d & 1) + (rb >> c & 1) + (rb >> d & 1)


def induced_subgraph_mask(g: Graph, s: int) -> Graph:
    keep = members(s)
    rows = []
    for v in keep:
        row = g.rows[v]
        rows.append(sum(1 << i for i, w in enumerate(keep) if row >> w & 1))
    return Graph(len(keep), tuple(rows))


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph on ``s``, relabelled ``0..|s|-1`` in increasing label order."""
    m = check_vertex_set(g, s)
    if not m:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    return induced_subgraph_mask(g, m)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    return induced_subgraph_mask(g, g.vertex_mask & ~check_vertex_set(g, vertices))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.order)):
        raise ValueError("perm must be a permutation of the vertex labels")
    return Graph.from_edges(g.order, ((perm[u], perm[v]) for u, v in g.edges()))


def two_graph(g: Graph) -> TwoGraph:
    if g.order < 3:
        raise ValueError("two-graph needs order >= 3")
    odd = set()
    for a, b, c in combinations(range(g.order), 3):
        if (g.rows[a] >> b ^ g.rows[a] >> c ^ g.rows[b] >> c) & 1:
            odd.add((a, b, c))
    return TwoGraph(g.order, frozenset(odd))
