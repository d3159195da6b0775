"""Half-approximation for the uniform-cost improvable maximum spanning tree.

Builds two candidate trees: a maximum spanning tree on base lengths, and a
size-capped greedy forest on improved lengths extended to a tree by base
edges.  The longer of the two is within a factor 1/2 of the optimum for any
improvement cap k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._util import UnionFind
from .instances import (
    DisconnectedGraphError,
    TreeSolution,
    UpgradableGraph,
    require_valid,
    solution_from_choices,
)

# weighted edges are (edge_id, u, v, weight) tuples
WeightedEdge = tuple[int, int, int, int]


@dataclass(frozen=True)
class CappedForest:
    edge_ids: tuple[int, ...]
    cap: int


def _greedy(n: int, edges: Sequence[WeightedEdge], cap: int | None,
            seed_uf: UnionFind | None = None) -> list[int]:
    """Kruskal on descending weight; ties broken by ascending edge id."""
    uf = seed_uf if seed_uf is not None else UnionFind(n)
    chosen = []
    for eid, u, v, _w in sorted(edges, key=lambda e: (-e[3], e[0])):
        if cap is not None and len(chosen) >= cap:
            break
        if uf.union(u, v):
            chosen.append(eid)
    return chosen


def max_spanning_tree(n: int, edges: Sequence[WeightedEdge]) -> list[int]:
    """Maximum-weight spanning tree; raises on a disconnected graph."""
    chosen = _greedy(n, edges, None)
    if len(chosen) != n - 1:
        raise DisconnectedGraphError("graph is not connected")
    return chosen


def max_forest_capped(n: int, edges: Sequence[WeightedEdge], k: int) -> CappedForest:
    """Greedy maximum forest with at most k edges."""
    if k < 0:
        raise ValueError("cap must be nonnegative")
    return CappedForest(tuple(_greedy(n, edges, k)), k)


def extend_forest_to_tree(n: int, forest_ids, all_edges: Sequence[WeightedEdge],
                          fill_edges: Sequence[WeightedEdge]) -> list[int]:
    """Grow a forest to a spanning tree with greedy fill edges.

    Forest edges are never removed; fill edges are added by descending weight
    without creating cycles.  ``all_edges`` supplies endpoints for the forest
    ids.
    """
    by_id = {e[0]: e for e in all_edges}
    uf = UnionFind(n)
    for eid in forest_ids:
        _, u, v, _w = by_id[eid]
        if not uf.union(u, v):
            raise ValueError("forest contains a cycle")
    forest = set(forest_ids)
    fill = [e for e in fill_edges if e[0] not in forest]
    tree = list(forest_ids) + _greedy(n, fill, None, seed_uf=uf)
    if len(tree) != n - 1:
        raise DisconnectedGraphError("graph is not connected")
    return tree


def uimst_half_approx(graph: UpgradableGraph, k: int) -> TreeSolution:
    """Best of the base-length tree and the capped improved-forest tree.

    Guarantees total length >= OPT(k) / 2 while using at most k improved
    edges.  Requires two-level ladders.
    """
    require_valid(graph)
    if any(len(e.ladder) != 2 for e in graph.edges):
        raise ValueError("uimst_half_approx needs two-level ladders")
    if k < 0:
        raise ValueError("cap must be nonnegative")
    base = [(e.id, e.u, e.v, e.ladder[0].length) for e in graph.edges]
    improved = [(e.id, e.u, e.v, e.ladder[1].length) for e in graph.edges]

    tree1 = max_spanning_tree(graph.n, base)
    sol1 = solution_from_choices(graph, {eid: 0 for eid in tree1})

    forest = max_forest_capped(graph.n, improved, k)
    tree2 = extend_forest_to_tree(graph.n, forest.edge_ids, improved, base)
    choices2 = {eid: (1 if eid in set(forest.edge_ids) else 0) for eid in tree2}
    sol2 = solution_from_choices(graph, choices2)

    # on a tie prefer the improved-forest tree
    return sol1 if sol1.total_length > sol2.total_length else sol2
