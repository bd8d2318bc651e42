"""All-pairs distances on connected weighted graphs.

Two built-in definitions: the weight distance (minimum sum of edge weights
over paths, a metric) and the edge distance (minimum weight sum among the
paths with the fewest edges, a semimetric whose triangle inequality can
fail). Arbitrary path choice functions induce further distances by summing
weights along the chosen paths. Equality comparisons between derived
distances are exact; test corpora use small integer weights so float sums
stay exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

from .errors import BarbedError
from .graph import WeightedGraph, require_connected
from .paths import PathChoiceFunction, all_pairs, require_consistent


class PartialOrder(Enum):
    EQUAL = "equal"
    LE = "le"
    GE = "ge"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    values: tuple[tuple[float, ...], ...]
    provenance: str
    hop_counts: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(self.values) != self.n or any(len(row) != self.n for row in self.values):
            raise BarbedError(f"values must be {self.n}x{self.n}")
        for v in range(self.n):
            if self.values[v][v] != 0.0:
                raise BarbedError(f"nonzero diagonal at {v}")
            for w in range(v + 1, self.n):
                if self.values[v][w] != self.values[w][v]:
                    raise BarbedError(f"asymmetric at ({v},{w})")
                if self.values[v][w] < 0:
                    raise BarbedError(f"negative value at ({v},{w})")

    def value(self, v: int, w: int) -> float:
        return self.values[v][w]

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "provenance": self.provenance,
            "values": [list(row) for row in self.values],
        }
        if self.hop_counts is not None:
            out["hop_counts"] = [list(row) for row in self.hop_counts]
        return out

    def same_values(self, other: "DistanceMatrix") -> bool:
        return self.n == other.n and self.values == other.values


def _single_source(g: WeightedGraph, source: int, mode: str) -> list[tuple]:
    """Dijkstra labels from ``source``; mode 'weight' uses plain weight sums,
    mode 'edge' uses lexicographic (edge count, weight sum) keys."""
    adj = g.adjacency()
    inf = (float("inf"),) if mode == "weight" else (float("inf"), float("inf"))
    zero = (0.0,) if mode == "weight" else (0, 0.0)
    best = [inf] * g.vertex_count
    best[source] = zero
    done = [False] * g.vertex_count
    heap = [(zero, source)]
    while heap:
        key, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            if done[v]:
                continue
            cand = (key[0] + w,) if mode == "weight" else (key[0] + 1, key[1] + w)
            if cand < best[v]:
                best[v] = cand
                heapq.heappush(heap, (cand, v))
    return best


def weight_distance(g: WeightedGraph) -> DistanceMatrix:
    """Minimum total edge weight over all paths between each pair."""
    require_connected(g)
    n = g.vertex_count
    rows = []
    for u in range(n):
        labels = _single_source(g, u, "weight")
        rows.append(tuple(labels[v][0] for v in range(n)))
    return DistanceMatrix(n, tuple(rows), "weight")


def edge_distance(g: WeightedGraph) -> DistanceMatrix:
    """Minimum total weight among the paths with the fewest edges; also
    records those minimum edge counts."""
    require_connected(g)
    n = g.vertex_count
    rows, hops = [], []
    for u in range(n):
        labels = _single_source(g, u, "edge")
        rows.append(tuple(0.0 if v == u else labels[v][1] for v in range(n)))
        hops.append(tuple(0 if v == u else labels[v][0] for v in range(n)))
    return DistanceMatrix(n, tuple(rows), "edge", hop_counts=tuple(hops))


def distance_from_paths(pcf: PathChoiceFunction) -> DistanceMatrix:
    """Distance induced by a consistent path choice function."""
    require_consistent(pcf)
    n = pcf.graph.vertex_count
    rows = [[0.0] * n for _ in range(n)]
    for u, v in all_pairs(n):
        d = pcf.route_weight(u, v)
        rows[u][v] = d
        rows[v][u] = d
    return DistanceMatrix(
        n, tuple(tuple(row) for row in rows), f"path-system({pcf.pcf_id})"
    )


def compare_pointwise(d1: DistanceMatrix, d2: DistanceMatrix) -> PartialOrder:
    """Entrywise comparison: EQUAL, LE (d1 <= d2, strict somewhere), GE, or
    INCOMPARABLE."""
    if d1.n != d2.n:
        raise BarbedError(f"dimension mismatch: {d1.n} vs {d2.n}")
    some_lt = some_gt = False
    for v in range(d1.n):
        for w in range(v + 1, d1.n):
            a, b = d1.values[v][w], d2.values[v][w]
            if a < b:
                some_lt = True
            elif a > b:
                some_gt = True
    if some_lt and some_gt:
        return PartialOrder.INCOMPARABLE
    if some_lt:
        return PartialOrder.LE
    if some_gt:
        return PartialOrder.GE
    return PartialOrder.EQUAL


@dataclass(frozen=True)
class MetricAxiomReport:
    symmetric: bool
    identity: bool
    triangle: bool

    def to_json_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "identity": self.identity,
            "triangle": self.triangle,
        }


def metric_axioms(d: DistanceMatrix) -> MetricAxiomReport:
    """Exhaustive per-instance check of symmetry, identity of
    indiscernibles, and the triangle inequality."""
    n = d.n
    symmetric = all(
        d.values[v][w] == d.values[w][v] for v in range(n) for w in range(n)
    )
    identity = all(d.values[v][v] == 0.0 for v in range(n)) and all(
        d.values[v][w] > 0 for v in range(n) for w in range(n) if v != w
    )
    triangle = all(
        d.values[x][z] <= d.values[x][y] + d.values[y][z]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
    return MetricAxiomReport(symmetric, identity, triangle)
