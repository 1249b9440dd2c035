"""tau-stability: the minimum cut of the binding graph is at least tau."""
from __future__ import annotations

import networkx as nx

from .assembly import Assembly


def binding_graph(assembly: Assembly, glues) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(assembly.placements)
    for p, q, s in assembly.binding_edges(glues):
        g.add_edge(p, q, weight=s)
    return g


def min_cut(assembly: Assembly, glues) -> float:
    """Exact minimum cut weight (infinity for a single tile)."""
    if len(assembly) <= 1:
        return float("inf")
    g = binding_graph(assembly, glues)
    if not nx.is_connected(g):
        return 0
    value, _ = nx.stoer_wagner(g)
    return value


def is_stable(assembly: Assembly, tau: int, glues) -> bool:
    if len(assembly) <= 1:
        return True
    g = binding_graph(assembly, glues)
    if not nx.is_connected(g):
        return False
    if tau <= 1:
        return True
    if tau == 2:
        # a cut lighter than 2 crosses exactly one edge of weight 1, i.e. a weak bridge
        return all(g.edges[e]["weight"] >= 2 for e in nx.bridges(g))
    value, _ = nx.stoer_wagner(g)
    return value >= tau
