"""Maximum-weight perfect matching on small undirected graphs."""

from __future__ import annotations

import networkx as nx

from mfass.errors import NoPerfectMatching

Edge = tuple[int, int, int]


def max_weight_perfect_matching(n_vertices: int, edges: list[Edge]) -> list[tuple[int, int]]:
    """Perfect matching of maximum total weight, as sorted ``(u, v)`` pairs with ``u < v``.

    Uses the blossom implementation in networkx with ``maxcardinality=True``;
    with integer weights it runs in exact integer arithmetic.
    """
    if n_vertices % 2:
        raise NoPerfectMatching(f"{n_vertices} vertices: odd count admits no perfect matching")
    if n_vertices == 0:
        return []
    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    for u, v, w in edges:
        if u == v:
            continue
        if g.has_edge(u, v):
            w = max(w, g[u][v]["weight"])
        g.add_edge(u, v, weight=w)
    mate = nx.max_weight_matching(g, maxcardinality=True, weight="weight")
    if 2 * len(mate) != n_vertices:
        raise NoPerfectMatching(f"maximum matching covers {2 * len(mate)} of {n_vertices} vertices")
    return sorted((min(u, v), max(u, v)) for u, v in mate)


def exhaustive_perfect_matching(n_vertices: int, edges: list[Edge]) -> tuple[int, list[tuple[int, int]]]:
    """Brute-force maximum-weight perfect matching, for graphs of a dozen vertices or so."""
    if n_vertices % 2:
        raise NoPerfectMatching(f"{n_vertices} vertices: odd count admits no perfect matching")
    weight: dict[tuple[int, int], int] = {}
    for u, v, w in edges:
        if u != v:
            key = (min(u, v), max(u, v))
            weight[key] = max(w, weight.get(key, w))
    free = [True] * n_vertices
    best: list = [None, []]
    chosen: list[tuple[int, int]] = []

    def rec(total: int) -> None:
        try:
            u = free.index(True)
        except ValueError:
            if best[0] is None or total > best[0]:
                best[0], best[1] = total, list(chosen)
            return
        free[u] = False
        for v in range(u + 1, n_vertices):
            if free[v] and (u, v) in weight:
                free[v] = False
                chosen.append((u, v))
                rec(total + weight[(u, v)])
                chosen.pop()
                free[v] = True
        free[u] = True

    rec(0)
    if best[0] is None:
        raise NoPerfectMatching("graph has no perfect matching")
    return best[0], best[1]


def matching_weight(edges: list[Edge], matching: list[tuple[int, int]]) -> int:
    weight: dict[tuple[int, int], int] = {}
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        weight[key] = max(w, weight.get(key, w))
    return sum(weight[(min(u, v), max(u, v))] for u, v in matching)
