"""Weighted-graph data model, validation, generators, and edge-list I/O.

Graphs are undirected, simple (no self-loops, no parallel edges), and carry
strictly positive edge weights. Vertex ids are the integers 0..n-1. All
values are immutable after construction; every operation here is a pure
function.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DisconnectedGraphError, GraphParseError, GraphValidationError

Edge = tuple[int, int, float]


def canonical_pair(u: int, v: int) -> tuple[int, int]:
    """Unordered vertex pair in canonical (min, max) form."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphValidationError("vertex_count must be >= 1")
        canon = []
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphValidationError(f"edge ({u},{v}) out of range")
            if not w > 0:
                raise GraphValidationError(f"edge ({u},{v}) has nonpositive weight {w}")
            pair = canonical_pair(u, v)
            if pair in seen:
                raise GraphValidationError(f"duplicate edge {pair}")
            seen.add(pair)
            canon.append((pair[0], pair[1], float(w)))
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> float:
        w = self.weights().get(canonical_pair(u, v))
        if w is None:
            raise KeyError(f"no edge ({u},{v})")
        return w

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_pair(u, v) in self.weights()

    def weights(self) -> dict[tuple[int, int], float]:
        cached = self.__dict__.get("_weights")
        if cached is None:
            cached = {(u, v): w for u, v, w in self.edges}
            self.__dict__["_weights"] = cached
        return cached

    def adjacency(self) -> dict[int, list[tuple[int, float]]]:
        cached = self.__dict__.get("_adjacency")
        if cached is None:
            cached = {v: [] for v in range(self.vertex_count)}
            for u, v, w in self.edges:
                cached[u].append((v, w))
                cached[v].append((u, w))
            for nbrs in cached.values():
                nbrs.sort()
            self.__dict__["_adjacency"] = cached
        return cached

    def edge_index(self) -> dict[tuple[int, int], int]:
        """Position of each edge in the canonical (sorted) edge order."""
        cached = self.__dict__.get("_edge_index")
        if cached is None:
            cached = {(u, v): i for i, (u, v, _) in enumerate(self.edges)}
            self.__dict__["_edge_index"] = cached
        return cached


def parse_graph(text: str, name: str = "") -> WeightedGraph:
    """Parse an edge-list document.

    Format: optional header line ``n <vertex_count>``, then one edge per
    line as ``<u> <v> <w>``; ``#`` starts a comment line. The vertex count
    is inferred as 1 + max id when no header is present.
    """
    declared_n = None
    edges: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if declared_n is not None or edges or len(parts) != 2:
                raise GraphParseError("bad-header", lineno, f"unexpected header {line!r}")
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise GraphParseError("bad-header", lineno, f"bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 3:
            raise GraphParseError("malformed-line", lineno, f"expected 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphParseError("malformed-line", lineno, f"bad numbers in {line!r}") from None
        if u == v:
            raise GraphParseError("self-loop", lineno, f"self-loop at vertex {u}")
        if not w > 0:
            raise GraphParseError("nonpositive-weight", lineno, f"weight {w} must be positive")
        pair = canonical_pair(u, v)
        if pair in seen:
            raise GraphParseError("duplicate-edge", lineno, f"duplicate edge {pair}")
        seen.add(pair)
        edges.append((u, v, w))
        max_id = max(max_id, u, v)
    n = declared_n if declared_n is not None else max_id + 1
    try:
        return WeightedGraph(n, tuple(edges), name=name)
    except GraphValidationError as exc:
        raise GraphParseError("malformed-line", 0, str(exc)) from exc


def serialize_graph(g: WeightedGraph) -> str:
    """Emit the edge-list document; edges in canonical order, header always present."""
    lines = [f"n {g.vertex_count}"]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def validate_connected(g: WeightedGraph) -> bool:
    """True iff every vertex is reachable from vertex 0."""
    seen = {0}
    stack = [0]
    adj = g.adjacency()
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.vertex_count


def cycle_graph(n: int, weights: list[float] | tuple[float, ...], name: str = "") -> WeightedGraph:
    """Cycle on vertices 0..n-1 with edge (i, (i+1) mod n) weighted weights[i]."""
    if n < 3:
        raise GraphValidationError(f"cycle needs n >= 3, got {n}")
    if len(weights) != n:
        raise GraphValidationError(f"need {n} weights, got {len(weights)}")
    edges = tuple((i, (i + 1) % n, float(weights[i])) for i in range(n))
    return WeightedGraph(n, edges, name=name or f"cycle{n}")


def complete_graph(n: int, weight_of, name: str = "") -> WeightedGraph:
    """Complete graph with weight_of(u, v) on each pair."""
    edges = tuple(
        (u, v, float(weight_of(u, v))) for u in range(n) for v in range(u + 1, n)
    )
    return WeightedGraph(n, edges, name=name)


def random_connected_graph(
    n: int,
    edge_prob: float,
    weight_lo: float,
    weight_hi: float,
    seed: int,
    weight_kind: str = "int",
) -> WeightedGraph:
    """Seeded random connected graph.

    A random spanning tree is built first (connectivity guaranteed), then
    every remaining pair is added independently with probability
    ``edge_prob``. Weights are drawn uniformly from [weight_lo, weight_hi];
    ``weight_kind`` selects integer (exact-sum friendly) or float draws.
    The same seed yields a bit-identical graph.
    """
    if n < 2:
        raise GraphValidationError(f"need n >= 2, got {n}")
    if not 0 <= edge_prob <= 1:
        raise GraphValidationError(f"edge_prob {edge_prob} out of [0, 1]")
    if not 0 < weight_lo <= weight_hi:
        raise GraphValidationError(f"bad weight bounds [{weight_lo}, {weight_hi}]")
    if weight_kind not in ("int", "float"):
        raise GraphValidationError(f"unknown weight_kind {weight_kind!r}")
    rng = random.Random(seed)

    def draw_weight() -> float:
        if weight_kind == "int":
            return float(rng.randint(int(weight_lo), int(weight_hi)))
        return rng.uniform(weight_lo, weight_hi)

    # Random recursive tree: attach each vertex (in shuffled order) to an
    # earlier one chosen uniformly.
    order = list(range(n))
    rng.shuffle(order)
    pairs: set[tuple[int, int]] = set()
    for i in range(1, n):
        anchor = order[rng.randrange(i)]
        pairs.add(canonical_pair(order[i], anchor))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < edge_prob:
                pairs.add((u, v))
    edges = tuple((u, v, draw_weight()) for u, v in sorted(pairs))
    return WeightedGraph(n, edges, name=f"random(n={n},seed={seed})")


def require_connected(g: WeightedGraph) -> None:
    if not validate_connected(g):
        raise DisconnectedGraphError(f"graph {g.name or ''} is not connected")
