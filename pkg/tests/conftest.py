from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from switchsep.graph import Graph, switch_mask

ACCEPTANCE_LINES: list[str] = []


def graph_from_mask(order: int, mask: int) -> Graph:
    pairs = list(combinations(range(order), 2))
    return Graph.from_edges(order, [p for k, p in enumerate(pairs) if mask >> k & 1])


def all_graphs(order: int):
    for mask in range(1 << (order * (order - 1) // 2)):
        yield graph_from_mask(order, mask)


def random_graph(rng: random.Random, order: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(
        order, [e for e in combinations(range(order), 2) if rng.random() < p]
    )


def random_subset(rng: random.Random, order: int) -> frozenset[int]:
    return frozenset(v for v in range(order) if rng.random() < 0.5)


def separable_by_switching_scan(g: Graph, w: int) -> bool:
    """Oracle: some switching leaves no edge between w and its complement."""
    rest = g.vertex_mask & ~w
    for u in range(1 << (g.order - 1)):
        h = switch_mask(g, u)
        if not any(h.rows[v] & rest for v in range(g.order) if w >> v & 1):
            return True
    return False


@st.composite
def graphs(draw, min_order: int = 0, max_order: int = 12):
    n = draw(st.integers(min_order, max_order))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def graph_and_subset(draw, min_order: int = 0, max_order: int = 12):
    g = draw(graphs(min_order, max_order))
    s = draw(st.sets(st.integers(0, max(g.order - 1, 0)), max_size=g.order)) if g.order else set()
    return g, frozenset(s)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20070618)
