"""Isolable vertex sets and switching separability.

A set ``W`` with ``2 <= |W| <= n-2`` is isolable when some switching leaves no
edge between ``W`` and its complement.  That happens exactly when every
cross quadruple ``a, b in W``, ``c, d not in W`` spans an even number of
edges, which is the test used here.

The decider works on the switching of ``g`` that isolates vertex 0.  There
an isolable set avoiding vertex 0 is the same thing as a set ``W`` (of size
at most ``n-2``) that contains ``N(a) ^ N(b)`` for every ``a, b`` in it.
Every such set contains the closure of one of its pairs, so it suffices to
close each pair of nonzero vertices under that rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import (
    Graph,
    VertexSet,
    check_vertex_set,
    members,
    popcount,
    switch_mask,
)


class NotIsolableError(ValueError):
    """Raised when a switching is requested for a set that is not isolable."""


@dataclass(frozen=True)
class SeparationWitness:
    part: VertexSet
    switching_set: VertexSet

    def validate(self, g: Graph) -> None:
        """Raise ``AssertionError`` unless this witness separates ``g``."""
        w = check_vertex_set(g, self.part)
        u = check_vertex_set(g, self.switching_set)
        k = popcount(w)
        if not 2 <= k <= g.order - 2:
            raise AssertionError(f"part size {k} outside 2..{g.order - 2}")
        h = switch_mask(g, u)
        rest = g.vertex_mask & ~w
        for v in members(w):
            if h.rows[v] & rest:
                raise AssertionError(f"vertex {v} still has cross edges after switching")

    def to_json(self) -> dict:
        return {"part": sorted(self.part), "switching_set": sorted(self.switching_set)}


def _set_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return popcount(mask), tuple(members(mask))


def _check_part(g: Graph, w) -> int:
    if g.order < 4:
        raise ValueError(f"separability needs order >= 4, got {g.order}")
    m = check_vertex_set(g, w)
    if not 2 <= popcount(m) <= g.order - 2:
        raise ValueError(f"|W| must lie in 2..{g.order - 2}, got {popcount(m)}")
    return m


def _isolable_mask(g: Graph, w: int) -> bool:
    rest = g.vertex_mask & ~w
    ws = members(w)
    base = g.rows[ws[0]]
    for b in ws[1:]:
        diff = (base ^ g.rows[b]) & rest
        if diff and diff != rest:
            return False
    return True


def is_isolable(g: Graph, w) -> bool:
    """True iff ``w`` can be cut off from the other vertices by a switching."""
    return _isolable_mask(g, _check_part(g, w))


def _isolating_switching_mask(g: Graph, w: int) -> int:
    rest = g.vertex_mask & ~w
    if not any(g.rows[v] & rest for v in members(w)):
        return 0
    for a in members(w):
        gap = rest & ~g.rows[a]
        if gap:
            break
    else:
        # every cross pair is an edge; switching W itself clears them
        return w
    c = members(gap)[0]
    return (g.rows[c] & w) | (g.rows[a] & rest)


def isolating_switching(g: Graph, w) -> VertexSet:
    """A switching set that removes all edges between ``w`` and the rest.

    Picks the least non-adjacent pair ``a in w``, ``c not in w`` and returns
    the members of ``w`` adjacent to ``c`` together with the non-members
    adjacent to ``a``.
    """
    m = _check_part(g, w)
    if not _isolable_mask(g, m):
        raise NotIsolableError(f"{sorted(members(m))} is not isolable")
    return frozenset(members(_isolating_switching_mask(g, m)))


def _pair_closure(rows: tuple[int, ...], c: int, d: int, limit: int) -> int:
    """Least set containing c, d and closed under x -> N(c) ^ N(x).

    Stops early once the set exceeds ``limit`` vertices.
    """
    base = rows[c]
    w = 1 << c | 1 << d
    todo = [d]
    while todo:
        x = todo.pop()
        new = (base ^ rows[x]) & ~w
        if new:
            w |= new
            if popcount(w) > limit:
                return w
            todo.extend(members(new))
    return w


def isolable_sets_avoiding_zero(g: Graph) -> set[int]:
    """Masks of the pair closures that are isolable and miss vertex 0."""
    n = g.order
    h = switch_mask(g, g.rows[0])
    found = set()
    for c, d in combinations(range(1, n), 2):
        w = _pair_closure(h.rows, c, d, n - 2)
        if popcount(w) <= n - 2:
            found.add(w)
    return found


def _normalize_switching(g: Graph, u: int) -> int:
    return min(u, g.vertex_mask & ~u, key=_set_key)


def _witness(g: Graph, w: int) -> SeparationWitness:
    u = _normalize_switching(g, _isolating_switching_mask(g, w))
    wit = SeparationWitness(frozenset(members(w)), frozenset(members(u)))
    wit.validate(g)
    return wit


def is_separable(g: Graph) -> SeparationWitness | None:
    """Return a separation witness for ``g``, or ``None`` if it has none.

    The reported part is the smallest isolable set avoiding vertex 0 (ties
    broken lexicographically); the switching set is the smaller of the two
    equivalent choices ``U`` and ``V - U``.
    """
    if g.order < 4:
        raise ValueError(f"separability needs order >= 4, got {g.order}")
    candidates = isolable_sets_avoiding_zero(g)
    if not candidates:
        return None
    return _witness(g, min(candidates, key=_set_key))


def is_isolable_by_quadruples(g: Graph, w: int) -> bool:
    """Parity test straight from the definition, over all cross quadruples."""
    inside = members(w)
    outside = members(g.vertex_mask & ~w)
    rows = g.rows
    for a, b in combinations(inside, 2):
        ra, rb = rows[a], rows[b]
        for c, d in combinations(outside, 2):
            if ((ra >> c) ^ (ra >> d) ^ (rb >> c) ^ (rb >> d)) & 1:
                return False
    return True


def brute_force_separable(g: Graph) -> SeparationWitness | None:
    """Scan every candidate part containing vertex 0.

    Parts are visited in lexicographic order of their sorted member tuples and
    tested with :func:`is_isolable_by_quadruples`.  Meant as an oracle for
    small orders (exponential in ``g.order``).
    """
    n = g.order
    if n < 4:
        raise ValueError(f"separability needs order >= 4, got {n}")

    def walk(prefix: list[int], nxt: int):
        if len(prefix) >= 2:
            yield prefix
        if len(prefix) == n - 2:
            return
        for v in range(nxt, n):
            yield from walk(prefix + [v], v + 1)

    for part in walk([0], 1):
        w = sum(1 << v for v in part)
        if is_isolable_by_quadruples(g, w):
            u = _isolating_switching_mask(g, w)
            wit = SeparationWitness(frozenset(part), frozenset(members(u)))
            wit.validate(g)
            return wit
    return None


def all_isolable_sets(g: Graph) -> list[VertexSet]:
    """Every isolable set of ``g`` by exhaustive scan (small orders only)."""
    n = g.order
    if n < 4:
        raise ValueError(f"separability needs order >= 4, got {n}")
    out = []
    for w in range(1 << n):
        if 2 <= popcount(w) <= n - 2 and _isolable_mask(g, w):
            out.append(frozenset(members(w)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def find_twins(g: Graph) -> list[tuple[int, int]]:
    """Pairs of vertices that every third vertex sees both or neither of."""
    out = []
    for v, w in combinations(range(g.order), 2):
        others = ~(1 << v | 1 << w)
        if (g.rows[v] ^ g.rows[w]) & others == 0:
            out.append((v, w))
    return out


def has_forbidden_pattern(g: Graph, o: int) -> bool:
    """Whether four vertices other than the isolated ``o`` induce a path P4."""
    check_vertex_set(g, [o])
    if g.order < 5:
        raise ValueError(f"pattern check needs order >= 5, got {g.order}")
    if g.rows[o]:
        raise ValueError(f"vertex {o} is not isolated")
    rest = [v for v in range(g.order) if v != o]
    rows = g.rows
    for quad in combinations(rest, 4):
        edges = [(x, y) for x, y in combinations(quad, 2) if rows[x] >> y & 1]
        if len(edges) != 3:
            continue
        degree = {v: 0 for v in quad}
        for x, y in edges:
            degree[x] += 1
            degree[y] += 1
        # three edges on four vertices form a path iff degrees are 1,1,2,2
        if sorted(degree.values()) == [1, 1, 2, 2]:
            return True
    return False
