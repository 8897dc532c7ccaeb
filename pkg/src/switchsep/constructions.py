"""The circulant family G_n for odd n >= 5 and checks of its separability profile.

G_n joins ``v_i`` to ``v_{i+j}`` for ``j = 1..floor(n/4)``, indices mod n.
It is not separable, yet every one-vertex deletion is; deleting the pair
``v_i, v_{i+m}`` with ``m = floor((n+1)/4)`` leaves a non-separable graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .graph import Graph, delete_vertices
from .graph6 import encode
from .separability import SeparationWitness, is_isolable, is_separable


@dataclass(frozen=True)
class CirculantSpec:
    n: int
    m: int
    width: int

    @classmethod
    def for_order(cls, n: int) -> CirculantSpec:
        if not isinstance(n, int) or n < 5 or n % 2 == 0:
            raise ValueError(f"G_n needs odd n >= 5, got {n!r}")
        spec = cls(n, (n + 1) // 4, n // 4)
        assert gcd(spec.m, n) == 1
        return spec

    def stride_order(self) -> list[int]:
        """Vertices v_0, v_m, v_2m, ...; a permutation of 0..n-1."""
        return [i * self.m % self.n for i in range(self.n)]


def circulant_gn(n: int) -> Graph:
    spec = CirculantSpec.for_order(n)
    return Graph.from_edges(
        n, ((i, (i + j) % n) for i in range(n) for j in range(1, spec.width + 1))
    )


def _after_deletion(v: int, deleted: list[int]) -> int:
    """Label of original vertex ``v`` once ``deleted`` are removed."""
    return v - sum(1 for d in deleted if d < v)


@dataclass
class GnReport:
    n: int
    m: int
    graph6: str
    nonseparable: bool
    # per deleted vertex i: witness of G_n - v_i, or None if none was found
    deletion_witnesses: list[SeparationWitness | None] = field(default_factory=list)
    # per deleted vertex i: whether {v_{i+m}, v_{i-m}} is isolable in G_n - v_i
    pair_witness_ok: list[bool] = field(default_factory=list)
    # per i: whether G_n - {v_i, v_{i+m}} is non-separable; empty when skipped
    pair_deletion_nonseparable: list[bool] = field(default_factory=list)
    pair_deletion_skipped: str | None = None

    @property
    def all_deletions_separable(self) -> bool:
        return all(w is not None for w in self.deletion_witnesses)

    @property
    def ok(self) -> bool:
        return (
            self.nonseparable
            and self.all_deletions_separable
            and all(self.pair_witness_ok)
            and all(self.pair_deletion_nonseparable)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "graph6": self.graph6,
            "ok": self.ok,
            "nonseparable": self.nonseparable,
            "all_deletions_separable": self.all_deletions_separable,
            "deletion_witnesses": [
                None if w is None else w.to_json() for w in self.deletion_witnesses
            ],
            "pair_witness_ok": self.pair_witness_ok,
            "pair_deletion_nonseparable": self.pair_deletion_nonseparable,
            "pair_deletion_skipped": self.pair_deletion_skipped,
        }


def verify_gn(n: int) -> GnReport:
    spec = CirculantSpec.for_order(n)
    g = circulant_gn(n)
    m = spec.m
    report = GnReport(n=n, m=m, graph6=encode(g), nonseparable=is_separable(g) is None)

    for i in range(n):
        h = delete_vertices(g, [i])
        report.deletion_witnesses.append(is_separable(h))
        pair = [_after_deletion((i + m) % n, [i]), _after_deletion((i - m) % n, [i])]
        report.pair_witness_ok.append(is_isolable(h, pair))

    if n - 2 < 4:
        report.pair_deletion_skipped = f"below order bound: n-2 = {n - 2} < 4"
    else:
        for i in range(n):
            h = delete_vertices(g, [i, (i + m) % n])
            report.pair_deletion_nonseparable.append(is_separable(h) is None)
    return report
