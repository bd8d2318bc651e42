"""Path choice functions: one simple path per vertex pair, closed under
taking sub-paths (consistency).

Extraction tie-breaking: among all optimal paths for a pair we minimize an
additive secondary key, the sum of 2**edge_index over the path's edges.
Distinct simple paths between the same endpoints have distinct edge sets,
so the optimum is unique per pair; because the full key is additive and
strictly positive per edge, sub-paths of the chosen path are themselves the
unique optima for their endpoints. That makes the extracted system
consistent by construction, realizing the replacement process the
consistency proof uses. A repair fixpoint is still provided for arbitrary
inconsistent inputs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapExceededError, InconsistentPathsError
from .graph import WeightedGraph, canonical_pair, require_connected

Pair = tuple[int, int]
Route = tuple[int, ...]


def canonical_route(path: Route) -> tuple[Pair, Route]:
    """Store a path from its smaller endpoint; returns (pair, oriented path)."""
    if path[0] > path[-1]:
        path = tuple(reversed(path))
    return (path[0], path[-1]), tuple(path)


def segment(path: Route, a: int, b: int) -> Route:
    """Sub-path of ``path`` between vertices a and b, in canonical orientation."""
    ia, ib = path.index(a), path.index(b)
    if ia > ib:
        ia, ib = ib, ia
    piece = path[ia : ib + 1]
    return canonical_route(piece)[1]


@dataclass
class PathChoiceFunction:
    graph: WeightedGraph
    assignment: dict[Pair, Route]
    pcf_id: str = "custom"

    def __post_init__(self):
        weights = self.graph.weights()
        for pair, route in self.assignment.items():
            if pair != (route[0], route[-1]) or pair[0] >= pair[1]:
                raise ValueError(f"route {route} not canonical for pair {pair}")
            if len(set(route)) != len(route):
                raise ValueError(f"route {route} repeats a vertex")
            for x, y in zip(route, route[1:]):
                if canonical_pair(x, y) not in weights:
                    raise ValueError(f"route {route} uses missing edge ({x},{y})")

    def route(self, v: int, w: int) -> Route:
        stored = self.assignment[canonical_pair(v, w)]
        return stored if stored[0] == v else tuple(reversed(stored))

    def route_weight(self, v: int, w: int) -> float:
        stored = self.assignment[canonical_pair(v, w)]
        return sum(self.graph.weight(x, y) for x, y in zip(stored, stored[1:]))

    def pairs(self) -> list[Pair]:
        return sorted(self.assignment)

    def signature(self) -> tuple[tuple[Pair, Route], ...]:
        return tuple(sorted(self.assignment.items()))


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    violations: tuple[tuple[Pair, Pair], ...]


def all_pairs(n: int) -> list[Pair]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def check_consistency(pcf: PathChoiceFunction) -> ConsistencyReport:
    """Every two vertices a,b on an assigned path must be assigned exactly
    that path's sub-path between a and b."""
    n = pcf.graph.vertex_count
    missing = [p for p in all_pairs(n) if p not in pcf.assignment]
    if missing:
        raise InconsistentPathsError(f"assignment not total, missing pairs {missing[:4]}")
    violations = []
    for pair, route in sorted(pcf.assignment.items()):
        for ia, ib in combinations(range(len(route)), 2):
            a, b = route[ia], route[ib]
            sub_pair = canonical_pair(a, b)
            if pcf.assignment[sub_pair] != segment(route, a, b):
                violations.append((pair, sub_pair))
    return ConsistencyReport(not violations, tuple(violations))


def require_consistent(pcf: PathChoiceFunction) -> None:
    report = check_consistency(pcf)
    if not report.ok:
        raise InconsistentPathsError(
            f"path choice function {pcf.pcf_id!r} is inconsistent at {report.violations[:4]}"
        )


def repair_consistency(pcf: PathChoiceFunction) -> PathChoiceFunction:
    """Replacement fixpoint: overwrite each conflicting sub-path with the
    enclosing path's sub-path, sweeping pairs in canonical order until
    stable. Fails loudly if no fixpoint is reached in |pairs|^2 sweeps or
    if the stable state is still inconsistent (two enclosing paths that
    disagree about a shared sub-pair cannot be repaired by overwrites)."""
    assignment = dict(pcf.assignment)
    max_rounds = max(1, len(assignment) ** 2)
    for _ in range(max_rounds):
        before = dict(assignment)
        for pair in sorted(assignment):
            route = assignment[pair]
            for ia, ib in combinations(range(len(route)), 2):
                sub_pair = canonical_pair(route[ia], route[ib])
                assignment[sub_pair] = segment(route, route[ia], route[ib])
        if assignment == before:
            repaired = PathChoiceFunction(pcf.graph, assignment, pcf.pcf_id)
            require_consistent(repaired)
            return repaired
    raise InconsistentPathsError(
        f"repair of {pcf.pcf_id!r} did not reach a fixpoint in {max_rounds} sweeps"
    )


def _dijkstra_routes(g: WeightedGraph, source: int, mode: str) -> dict[int, Route]:
    """Unique optimal path from ``source`` to every vertex.

    Keys: mode 'weight' minimizes (weight sum, tie key); mode 'edge'
    minimizes (edge count, weight sum, tie key); the tie key is the sum of
    2**edge_index, which is injective on edge sets.
    """
    adj = g.adjacency()
    index = g.edge_index()
    start = (0, 0.0, 0) if mode == "edge" else (0.0, 0)
    best: dict[int, tuple] = {source: start}
    parent: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple] = [(start, source)]
    while heap:
        key, u = heapq.heappop(heap)
        if u in done or best[u] != key:
            continue
        done.add(u)
        for v, w in adj[u]:
            if v in done:
                continue
            tie = 1 << index[canonical_pair(u, v)]
            if mode == "edge":
                cand = (key[0] + 1, key[1] + w, key[2] + tie)
            else:
                cand = (key[0] + w, key[1] + tie)
            if v not in best or cand < best[v]:
                best[v] = cand
                parent[v] = u
                heapq.heappush(heap, (cand, v))
    routes: dict[int, Route] = {}
    for v in range(g.vertex_count):
        if v == source:
            continue
        walk = [v]
        while walk[-1] != source:
            walk.append(parent[walk[-1]])
        routes[v] = tuple(reversed(walk))
    return routes


def extract_paths(g: WeightedGraph, mode: str) -> PathChoiceFunction:
    """Consistent path choice function whose induced distance equals the
    weight-minimal distance (mode='weight') or the fewest-edges distance
    (mode='edge')."""
    if mode not in ("weight", "edge"):
        raise ValueError(f"mode must be 'weight' or 'edge', got {mode!r}")
    require_connected(g)
    assignment: dict[Pair, Route] = {}
    for u in range(g.vertex_count):
        for v, route in _dijkstra_routes(g, u, mode).items():
            if u < v:
                assignment[(u, v)] = route
    pcf = PathChoiceFunction(g, assignment, pcf_id=mode)
    if not check_consistency(pcf).ok:
        pcf = repair_consistency(pcf)
    return pcf


def all_simple_paths(g: WeightedGraph, u: int, v: int) -> list[Route]:
    """Every simple path between u and v, sorted by vertex sequence."""
    adj = g.adjacency()
    out: list[Route] = []
    walk = [u]
    on_walk = {u}

    def dfs(x: int):
        if x == v:
            out.append(tuple(walk))
            return
        for y, _ in adj[x]:
            if y not in on_walk:
                walk.append(y)
                on_walk.add(y)
                dfs(y)
                walk.pop()
                on_walk.remove(y)

    dfs(u)
    return sorted(out)


def enumerate_pcfs(
    g: WeightedGraph, vertex_cap: int = 7, result_cap: int | None = None
) -> list[PathChoiceFunction]:
    """Every consistent path choice function on g, each exactly once, in a
    deterministic order (backtracking over pairs; choosing a path forces
    all of its sub-paths)."""
    if g.vertex_count > vertex_cap:
        raise CapExceededError(
            f"enumerate_pcfs capped at {vertex_cap} vertices, got {g.vertex_count}",
            required=g.vertex_count,
        )
    require_connected(g)
    pairs = all_pairs(g.vertex_count)
    candidates = {(u, v): all_simple_paths(g, u, v) for u, v in pairs}
    assignment: dict[Pair, Route] = {}
    results: list[PathChoiceFunction] = []

    def place(route: Route) -> list[Pair] | None:
        added: list[Pair] = []
        for ia, ib in combinations(range(len(route)), 2):
            sub_pair = canonical_pair(route[ia], route[ib])
            sub = segment(route, route[ia], route[ib])
            cur = assignment.get(sub_pair)
            if cur is None:
                assignment[sub_pair] = sub
                added.append(sub_pair)
            elif cur != sub:
                for k in added:
                    del assignment[k]
                return None
        return added

    def recurse(idx: int):
        if idx == len(pairs):
            results.append(PathChoiceFunction(g, dict(assignment), f"pcf{len(results)}"))
            if result_cap is not None and len(results) > result_cap:
                raise CapExceededError(
                    f"more than {result_cap} path choice functions", required=len(results)
                )
            return
        pair = pairs[idx]
        if pair in assignment:
            recurse(idx + 1)
            return
        for cand in candidates[pair]:
            added = place(cand)
            if added is not None:
                recurse(idx + 1)
                for k in added:
                    del assignment[k]

    recurse(0)
    return results


@dataclass(frozen=True)
class DominanceReport:
    weight_dominated: bool
    cost_dominated: bool
    offending_edges: tuple[tuple[Pair, str], ...] = field(default=())


def classify_dominance(pcf: PathChoiceFunction) -> DominanceReport:
    """An edge routed around must strictly outweigh each edge on its route
    (weight-dominated) or carry at least the route's total (cost-dominated)."""
    require_consistent(pcf)
    g = pcf.graph
    weight_ok, cost_ok = True, True
    offending: list[tuple[Pair, str]] = []
    for u, v, w in g.edges:
        route = pcf.assignment[(u, v)]
        if route == (u, v):
            continue
        leg_weights = [g.weight(x, y) for x, y in zip(route, route[1:])]
        if not all(w > lw for lw in leg_weights):
            weight_ok = False
            offending.append(((u, v), "weight"))
        if not w >= sum(leg_weights):
            cost_ok = False
            offending.append(((u, v), "cost"))
    return DominanceReport(weight_ok, cost_ok, tuple(offending))


def graph_completion(pcf: PathChoiceFunction) -> WeightedGraph:
    """Complete graph on the same vertices, each pair weighted by the sum of
    edge weights along its chosen path."""
    require_consistent(pcf)
    g = pcf.graph
    edges = tuple(
        (u, v, pcf.route_weight(u, v)) for u, v in all_pairs(g.vertex_count)
    )
    return WeightedGraph(g.vertex_count, edges, name=f"completion({g.name},{pcf.pcf_id})")


def maximal_paths(pcf: PathChoiceFunction) -> list[Route]:
    """Assigned paths that are maximal under sub-path inclusion; expanding
    their sub-paths reproduces the assignment exactly."""
    require_consistent(pcf)
    routes = sorted(set(pcf.assignment.values()))
    out = []
    for p in routes:
        ends = {p[0], p[-1]}
        covered = any(q != p and ends <= set(q) for q in routes)
        if not covered:
            out.append(p)
    return out


def pcf_from_maximal_paths(
    g: WeightedGraph, paths: list[Route], pcf_id: str = "expanded"
) -> PathChoiceFunction:
    """Rebuild a path choice function by taking all sub-paths of ``paths``."""
    assignment: dict[Pair, Route] = {}
    for route in paths:
        for ia, ib in combinations(range(len(route)), 2):
            sub_pair = canonical_pair(route[ia], route[ib])
            sub = segment(route, route[ia], route[ib])
            cur = assignment.get(sub_pair)
            if cur is not None and cur != sub:
                raise InconsistentPathsError(
                    f"maximal paths disagree on pair {sub_pair}"
                )
            assignment[sub_pair] = sub
    pcf = PathChoiceFunction(g, assignment, pcf_id)
    require_consistent(pcf)
    return pcf


def pcf_to_json_dict(pcf: PathChoiceFunction) -> dict:
    g = pcf.graph
    return {
        "graph": {
            "n": g.vertex_count,
            "edges": [[u, v, w] for u, v, w in g.edges],
            "name": g.name,
        },
        "id": pcf.pcf_id,
        "paths": [
            {"pair": list(pair), "route": list(route)}
            for pair, route in sorted(pcf.assignment.items())
        ],
    }


def pcf_from_json_dict(data: dict, graph: WeightedGraph | None = None) -> PathChoiceFunction:
    if graph is None:
        gd = data["graph"]
        graph = WeightedGraph(
            gd["n"], tuple((u, v, w) for u, v, w in gd["edges"]), name=gd.get("name", "")
        )
    assignment = {}
    for item in data["paths"]:
        route = tuple(item["route"])
        pair, route = canonical_route(route)
        assignment[pair] = route
    return PathChoiceFunction(graph, assignment, data.get("id", "custom"))
