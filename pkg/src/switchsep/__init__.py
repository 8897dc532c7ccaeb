"""Seidel switching, switching separability, and the graph / Boolean function /
quasigroup correspondence."""

__version__ = "0.1.0"

from .graph import Graph, TwoGraph, complement, cross_parity, induced_subgraph, switch, two_graph
from .separability import SeparationWitness, brute_force_separable, is_isolable, is_separable

__all__ = [
    "Graph",
    "SeparationWitness",
    "TwoGraph",
    "brute_force_separable",
    "complement",
    "cross_parity",
    "induced_subgraph",
    "is_isolable",
    "is_separable",
    "switch",
    "two_graph",
]
