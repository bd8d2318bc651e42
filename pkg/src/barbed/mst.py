"""Minimum spanning trees: Kruskal with explicit tie-breaking, and exact
enumeration of the full MST set on small graphs.

The enumeration walks weight classes in ascending order; inside a class it
enumerates every maximal acyclic subset of the still-useful edges by
include/exclude recursion (the exclude branch is only legal while the
endpoints remain joinable within the class). This yields each MST exactly
once.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Callable, Iterable

from .errors import CapExceededError, DisconnectedGraphError
from .graph import WeightedGraph, canonical_pair, require_connected


@dataclass(frozen=True)
class SpanningTree:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    total_weight: float
    parent_graph_id: str = ""

    def __post_init__(self):
        if len(self.edges) != self.vertex_count - 1:
            raise ValueError("a spanning tree on n vertices has n-1 edges")
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edges contain a cycle through ({u},{v})")
            parent[ru] = rv

    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def weighted_edges(self, g: WeightedGraph) -> frozenset[tuple[int, int, float]]:
        return frozenset((u, v, g.weight(u, v)) for u, v in self.edges)


def kruskal_mst(
    g: WeightedGraph,
    tie_break: Callable[[tuple[int, int]], object] | None = None,
) -> SpanningTree:
    """Deterministic Kruskal MST; equal weights resolved by ``tie_break``
    (canonical edge order by default)."""
    require_connected(g)
    if tie_break is None:
        tie_break = lambda pair: pair
    order = sorted(((w, tie_break((u, v)), (u, v)) for u, v, w in g.edges))
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    total = 0.0
    for w, _, (u, v) in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
            total += w
            if len(chosen) == g.vertex_count - 1:
                break
    return SpanningTree(g.vertex_count, frozenset(chosen), total, g.name)


def _roots(parent: tuple[int, ...], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def _union(parent: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    ru, rv = _roots(parent, u), _roots(parent, v)
    if ru == rv:
        return parent
    lo, hi = min(ru, rv), max(ru, rv)
    return tuple(lo if _roots(parent, x) == hi else parent[x] for x in range(len(parent)))


def _joinable(parent: tuple[int, ...], edges: list[tuple[int, int]], u: int, v: int) -> bool:
    """Can components of u and v still be merged using ``edges``?"""
    p = parent
    for a, b in edges:
        p = _union(p, a, b)
    return _roots(p, u) == _roots(p, v)


def _maximal_forests(
    parent: tuple[int, ...], edges: list[tuple[int, int]]
) -> Iterable[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]]:
    """All maximal acyclic subsets of ``edges`` over the component structure
    ``parent``, with the resulting component structure."""
    edges = [e for e in edges if _roots(parent, e[0]) != _roots(parent, e[1])]
    if not edges:
        yield (), parent
        return
    first, rest = edges[0], edges[1:]
    u, v = first
    # include first
    merged = _union(parent, u, v)
    for forest, p in _maximal_forests(merged, rest):
        yield (first,) + forest, p
    # exclude first: only maximal if u,v remain joinable via the rest
    if _joinable(parent, rest, u, v):
        yield from _maximal_forests(parent, rest)


def enumerate_msts(
    g: WeightedGraph, vertex_cap: int = 10, tree_cap: int = 200_000
) -> list[SpanningTree]:
    """The complete set MST(g), in a canonical deterministic order.

    Raises CapExceededError beyond ``vertex_cap`` vertices (the MST count
    can explode) or past ``tree_cap`` trees.
    """
    if g.vertex_count > vertex_cap:
        raise CapExceededError(
            f"enumerate_msts capped at {vertex_cap} vertices, got {g.vertex_count}",
            required=g.vertex_count,
        )
    require_connected(g)
    by_weight = [
        (w, [canonical_pair(u, v) for u, v, _ in group])
        for w, group in groupby(sorted(g.edges, key=lambda e: (e[2], e[:2])), key=lambda e: e[2])
    ]
    results: list[SpanningTree] = []

    def recurse(class_idx: int, parent: tuple[int, ...], chosen: tuple[tuple[int, int], ...], weight: float):
        if class_idx == len(by_weight):
            results.append(SpanningTree(g.vertex_count, frozenset(chosen), weight, g.name))
            if len(results) > tree_cap:
                raise CapExceededError(
                    f"more than {tree_cap} minimum spanning trees", required=len(results)
                )
            return
        w, class_edges = by_weight[class_idx]
        for forest, p in _maximal_forests(parent, class_edges):
            recurse(class_idx + 1, p, chosen + forest, weight + w * len(forest))

    recurse(0, tuple(range(g.vertex_count)), (), 0.0)
    return sorted(results, key=lambda t: t.sorted_edges())
