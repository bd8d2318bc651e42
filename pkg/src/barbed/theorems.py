"""Executable verification of the structural properties this package is
built around: the birth-edge injection between comparable cost-dominated
distances, birth-edge invariants, MST invariance of graph completions,
poset extremes, and the randomized search for high-dimensional
counterexamples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .distances import (
    DistanceMatrix,
    PartialOrder,
    compare_pointwise,
    distance_from_paths,
    edge_distance,
    weight_distance,
)
from .errors import BarbedError
from .graph import WeightedGraph, canonical_pair, random_connected_graph, serialize_graph
from .mst import enumerate_msts, kruskal_mst
from .oracle import naive_homology_oracle
from .paths import (
    PathChoiceFunction,
    classify_dominance,
    enumerate_pcfs,
    extract_paths,
    graph_completion,
    require_consistent,
)
from .persistence import (
    Bar,
    Barcode,
    build_filtration,
    canonical_ordering,
    extract_barcode,
    mst_from_reduction,
    random_tie_ordering,
    reduce_matrix,
    vertex_ordering,
)

Pair = tuple[int, int]


def _bcd1_with_ordering(d: DistanceMatrix, ordering) -> Barcode:
    cx = build_filtration(d, 2, ordering=ordering)
    return extract_barcode(reduce_matrix(cx), cx, 1)


def barcode_of_distance(d: DistanceMatrix, k: int, max_dim: int | None = None) -> Barcode:
    """Barcode of the Rips filtration of a distance matrix, canonical
    vertex ordering."""
    if max_dim is None:
        max_dim = k + 1
    cx = build_filtration(d, max_dim, ordering=vertex_ordering())
    return extract_barcode(reduce_matrix(cx), cx, k)


@dataclass(frozen=True)
class InjectionReport:
    source_distance: str
    target_distance: str
    matched: tuple[tuple[Pair, tuple[float, float], tuple[float, float]], ...]
    unmatched_target: tuple[tuple[Pair, tuple[float, float]], ...]
    failures: tuple[tuple[Pair, str], ...]
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "source_distance": self.source_distance,
            "target_distance": self.target_distance,
            "matched": [
                {"birth_edge": list(e), "source_bar": list(s), "target_bar": list(t)}
                for e, s, t in self.matched
            ],
            "unmatched_target": [
                {"birth_edge": list(e), "bar": list(b)} for e, b in self.unmatched_target
            ],
            "failures": [
                {"birth_edge": list(e), "reason": r} for e, r in self.failures
            ],
            "ok": self.ok,
        }


def _bars_by_birth_edge(bcd: Barcode, side: str) -> dict[Pair, Bar]:
    by_edge: dict[Pair, Bar] = {}
    for bar in bcd.bars:
        edge = bar.birth_simplex
        if edge in by_edge:
            raise BarbedError(f"duplicate birth edge {edge} in {side} barcode")
        by_edge[edge] = bar
    return by_edge


def verify_injection(
    g: WeightedGraph,
    pcf_small: PathChoiceFunction,
    pcf_large: PathChoiceFunction,
) -> InjectionReport:
    """Match dimension-1 bars of the smaller distance into the larger one
    by birth edge, under one shared tree-first simplex ordering.

    Requires both path choice functions cost-dominated and the induced
    distances pointwise comparable (small <= large). For each source bar
    [a, b] the matched target bar must have the same birth edge, birth a,
    and death >= b; any miss is reported as a failure.
    """
    for pcf, label in ((pcf_small, "small"), (pcf_large, "large")):
        report = classify_dominance(pcf)
        if not report.cost_dominated:
            raise BarbedError(
                f"{label} path choice function {pcf.pcf_id!r} is not cost-dominated"
            )
    d_small = distance_from_paths(pcf_small)
    d_large = distance_from_paths(pcf_large)
    order = compare_pointwise(d_small, d_large)
    if order not in (PartialOrder.EQUAL, PartialOrder.LE):
        raise BarbedError(
            f"distances are not comparable as small <= large (got {order.value})"
        )
    shared_mst = kruskal_mst(g)
    cx_probe = build_filtration(d_small, 2)
    ordering = canonical_ordering(cx_probe, shared_mst)
    bcd_small = _bcd1_with_ordering(d_small, ordering)
    bcd_large = _bcd1_with_ordering(d_large, ordering)
    small_by_edge = _bars_by_birth_edge(bcd_small, "source")
    large_by_edge = _bars_by_birth_edge(bcd_large, "target")

    matched = []
    failures = []
    for edge in sorted(small_by_edge):
        s_bar = small_by_edge[edge]
        t_bar = large_by_edge.get(edge)
        if t_bar is None:
            failures.append((edge, "missing-in-target"))
            continue
        matched.append((edge, (s_bar.birth, s_bar.death), (t_bar.birth, t_bar.death)))
        if s_bar.birth != t_bar.birth:
            failures.append((edge, "birth-mismatch"))
        elif t_bar.death < s_bar.death:
            failures.append((edge, "death-decreased"))
    unmatched_target = tuple(
        (edge, (bar.birth, bar.death))
        for edge, bar in sorted(large_by_edge.items())
        if edge not in small_by_edge
    )
    failures_t = tuple(failures)
    return InjectionReport(
        d_small.provenance,
        d_large.provenance,
        tuple(matched),
        unmatched_target,
        failures_t,
        not failures_t,
    )


@dataclass(frozen=True)
class BirthEdgeAudit:
    bar_count: int
    violations: tuple[tuple[Pair, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "bar_count": self.bar_count,
            "violations": [
                {"birth_simplex": list(e), "check": c} for e, c in self.violations
            ],
            "ok": self.ok,
        }


def audit_birth_edges(pcf: PathChoiceFunction) -> BirthEdgeAudit:
    """For the dimension-1 barcode of the induced distance: every birth
    simplex must be an edge of the original graph, carry weight equal to
    the distance of its endpoints, and admit no third vertex strictly
    closer than the bar's birth to both endpoints."""
    require_consistent(pcf)
    g = pcf.graph
    d = distance_from_paths(pcf)
    completion = graph_completion(pcf)
    cx_probe = build_filtration(d, 2)
    ordering = canonical_ordering(cx_probe, kruskal_mst(completion))
    bcd = _bcd1_with_ordering(d, ordering)
    weights = g.weights()
    violations = []
    for bar in bcd.bars:
        u, v = bar.birth_simplex
        if (u, v) not in weights:
            violations.append(((u, v), "birth-simplex-not-a-graph-edge"))
        elif weights[(u, v)] != d.value(u, v):
            violations.append(((u, v), "edge-weight-differs-from-distance"))
        for x in range(g.vertex_count):
            if x in (u, v):
                continue
            if d.value(u, x) < bar.birth and d.value(v, x) < bar.birth:
                violations.append(((u, v), f"dominating-midpoint-{x}"))
    return BirthEdgeAudit(len(bcd.bars), tuple(violations))


@dataclass(frozen=True)
class MstInvarianceReport:
    equal: bool
    weight_dominated: bool
    mst_g: tuple[tuple[tuple[int, int, float], ...], ...]
    mst_kg: tuple[tuple[tuple[int, int, float], ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "equal": self.equal,
            "weight_dominated": self.weight_dominated,
            "mst_g": [[list(e) for e in tree] for tree in self.mst_g],
            "mst_kg": [[list(e) for e in tree] for tree in self.mst_kg],
        }


def check_mst_invariance(pcf: PathChoiceFunction, vertex_cap: int = 10) -> MstInvarianceReport:
    """Compare the full MST sets of the graph and of its completion, as
    sets of weighted edge sets. Equality is guaranteed when the path
    choice function is weight-dominated; otherwise this merely reports."""
    g = pcf.graph
    completion = graph_completion(pcf)
    trees_g = {
        tuple(sorted(t.weighted_edges(g))) for t in enumerate_msts(g, vertex_cap)
    }
    trees_k = {
        tuple(sorted(t.weighted_edges(completion)))
        for t in enumerate_msts(completion, vertex_cap)
    }
    return MstInvarianceReport(
        trees_g == trees_k,
        classify_dominance(pcf).weight_dominated,
        tuple(sorted(trees_g)),
        tuple(sorted(trees_k)),
    )


@dataclass(frozen=True)
class PosetExtremesReport:
    least: int | None
    greatest: int | None

    def to_json_dict(self) -> dict:
        return {"least": self.least, "greatest": self.greatest}


def poset_extremes(distances: list[DistanceMatrix]) -> PosetExtremesReport:
    """Indices of a pointwise-least and pointwise-greatest element, if they
    exist (first qualifying index on ties)."""
    least = greatest = None
    for i, d in enumerate(distances):
        vs_all = [compare_pointwise(d, other) for other in distances]
        if least is None and all(
            c in (PartialOrder.EQUAL, PartialOrder.LE) for c in vs_all
        ):
            least = i
        if greatest is None and all(
            c in (PartialOrder.EQUAL, PartialOrder.GE) for c in vs_all
        ):
            greatest = i
    return PosetExtremesReport(least, greatest)


def cost_dominated_distances(
    g: WeightedGraph, vertex_cap: int = 7
) -> list[tuple[PathChoiceFunction, DistanceMatrix]]:
    """Every cost-dominated path choice function on g with its induced
    distance, in enumeration order."""
    out = []
    for pcf in enumerate_pcfs(g, vertex_cap):
        if classify_dominance(pcf).cost_dominated:
            out.append((pcf, distance_from_paths(pcf)))
    return out


def _cycle_order(g: WeightedGraph) -> list[int]:
    adj = g.adjacency()
    if g.edge_count != g.vertex_count or any(len(nbrs) != 2 for nbrs in adj.values()):
        raise BarbedError("graph is not a cycle")
    order = [0, adj[0][0][0]]
    while len(order) < g.vertex_count:
        a, b = adj[order[-1]][0][0], adj[order[-1]][1][0]
        order.append(b if a == order[-2] else a)
    return order


def cycle_cut_pcf(g: WeightedGraph, cut_edge: Pair, long_route: bool) -> PathChoiceFunction:
    """On a cycle graph: route every pair along the path that avoids
    ``cut_edge``; the cut pair itself takes its edge, or the full
    complementary path when ``long_route``."""
    from .paths import pcf_from_maximal_paths, canonical_route

    cut = canonical_pair(*cut_edge)
    if not g.has_edge(*cut):
        raise BarbedError(f"{cut} is not an edge")
    order = _cycle_order(g)
    n = len(order)
    pos = order.index(cut[0])
    after = order[(pos + 1) % n]
    hamiltonian = (
        order[pos + 1 :] + order[: pos + 1] if after == cut[1] else
        list(reversed(order[pos:] + order[:pos]))
    )
    # hamiltonian runs from one endpoint of the cut edge around to the other
    pcf = pcf_from_maximal_paths(g, [tuple(hamiltonian)], pcf_id=f"cut{cut}")
    if long_route:
        pair, route = canonical_route(tuple(hamiltonian))
        assert pair == cut
        assignment = dict(pcf.assignment)
        assignment[cut] = route
        pcf = PathChoiceFunction(g, assignment, pcf_id=f"cut{cut}-long")
    else:
        assignment = dict(pcf.assignment)
        assignment[cut] = cut
        pcf = PathChoiceFunction(g, assignment, pcf_id=f"cut{cut}-short")
    require_consistent(pcf)
    return pcf


def opposite_cycle_routings(g: WeightedGraph) -> tuple[PathChoiceFunction, PathChoiceFunction]:
    """The two hand-built distances used to rule out a greatest element on
    cycles with at least 5 vertices: around a control vertex, one routes
    clockwise to the two middle vertices, the other counterclockwise. Both
    are vacuously cost-dominated (every edge keeps itself)."""
    if g.vertex_count < 5:
        raise BarbedError("needs a cycle with at least 5 vertices")
    order = _cycle_order(g)
    d1 = cycle_cut_pcf(g, canonical_pair(order[3], order[4]), long_route=False)
    d2 = cycle_cut_pcf(g, canonical_pair(order[1], order[2]), long_route=False)
    return d1, d2


@dataclass(frozen=True)
class CounterexampleWitness:
    k: int
    trial: int
    seed: int
    graph: WeightedGraph
    bcd_k_edge_size: int
    bcd_k_weight_size: int

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "trial": self.trial,
            "seed": self.seed,
            "graph": serialize_graph(self.graph),
            "bcd_k_sizes": {
                "edge": self.bcd_k_edge_size,
                "weight": self.bcd_k_weight_size,
            },
        }


def _derive(seed: int, t: int) -> int:
    return (seed * 6364136223846793005 + t * 1442695040888963407 + 1) % (1 << 64)


def trial_graph(
    seed: int,
    t: int,
    n_range: tuple[int, int],
    p_range: tuple[float, float],
    w_range: tuple[int, int],
) -> WeightedGraph:
    """Graph for trial t, derived from (seed, t) only."""
    rng = random.Random(_derive(seed, t))
    n = rng.randint(*n_range)
    p = rng.uniform(*p_range)
    return random_connected_graph(n, p, w_range[0], w_range[1], rng.getrandbits(63))


def barcode_sizes(g: WeightedGraph, k: int) -> tuple[int, int]:
    """(|bcd_k of the edge distance|, |bcd_k of the weight distance|)."""
    size_edge = len(barcode_of_distance(edge_distance(g), k).bars)
    size_weight = len(barcode_of_distance(weight_distance(g), k).bars)
    return size_edge, size_weight


def search_counterexample(
    k: int,
    trials: int,
    seed: int,
    n_range: tuple[int, int] = (6, 10),
    p_range: tuple[float, float] = (0.4, 0.9),
    w_range: tuple[int, int] = (1, 10),
) -> CounterexampleWitness | None:
    """Hunt for a graph whose dimension-k barcode of the edge distance is
    strictly smaller than that of the weight distance, which rules out any
    injection from the weight side. Refuses k < 2, where the injection is
    a theorem. Trial t depends only on (seed, t); the first hit wins."""
    if k < 2:
        raise BarbedError(f"theorem holds in dimension {k}; search requires k >= 2")
    if k > 5:
        raise BarbedError(f"search supports k in 2..5, got {k}")
    for t in range(trials):
        g = trial_graph(seed, t, n_range, p_range, w_range)
        size_edge, size_weight = barcode_sizes(g, k)
        if size_edge < size_weight:
            again = barcode_sizes(g, k)
            if again != (size_edge, size_weight):
                raise BarbedError("witness recomputation disagreed")
            return CounterexampleWitness(k, t, seed, g, size_edge, size_weight)
    return None


# --------------------------------------------------------------------------
# Campaign drivers: each runs a seeded corpus through one verifier and
# returns a summary with enough payload to replay any failure.


@dataclass
class CampaignSummary:
    name: str
    seed: int
    trials: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "checks": self.checks,
            "failures": self.failures,
            "ok": self.ok,
        }


def _corpus(seed, trials, n_range, p_range, w_range):
    for t in range(trials):
        yield t, trial_graph(seed, t, n_range, p_range, w_range)


def inequality_campaign(
    trials: int, seed: int, n_range=(3, 12), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """Weight distance <= edge distance entrywise, exact comparison."""
    summary = CampaignSummary("weight-le-edge", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        summary.checks += 1
        order = compare_pointwise(weight_distance(g), edge_distance(g))
        if order not in (PartialOrder.EQUAL, PartialOrder.LE):
            summary.failures.append({"trial": t, "graph": serialize_graph(g), "order": order.value})
    return summary


def injection_campaign(
    trials: int, seed: int, n_range=(3, 10), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """verify_injection(weight extraction, edge extraction) on a random
    corpus; any not-ok report is a failure."""
    summary = CampaignSummary("injection-weight-into-edge", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        summary.checks += 1
        report = verify_injection(g, extract_paths(g, "weight"), extract_paths(g, "edge"))
        if not report.ok:
            summary.failures.append(
                {"trial": t, "graph": serialize_graph(g), "report": report.to_json_dict()}
            )
    return summary


def enumerated_injection_campaign(
    trials: int, seed: int, n_range=(4, 7), p_range=(0.3, 0.6), w_range=(1, 10)
) -> CampaignSummary:
    """All ordered comparable pairs among the enumerated cost-dominated
    path choice functions of each corpus graph."""
    summary = CampaignSummary("injection-enumerated", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        pool = [
            (pcf, d)
            for pcf, d in cost_dominated_distances(g)
        ]
        for i, (pcf_i, d_i) in enumerate(pool):
            for j, (pcf_j, d_j) in enumerate(pool):
                if i == j:
                    continue
                if compare_pointwise(d_i, d_j) not in (PartialOrder.EQUAL, PartialOrder.LE):
                    continue
                summary.checks += 1
                report = verify_injection(g, pcf_i, pcf_j)
                if not report.ok:
                    summary.failures.append(
                        {
                            "trial": t,
                            "graph": serialize_graph(g),
                            "small": pcf_i.pcf_id,
                            "large": pcf_j.pcf_id,
                            "report": report.to_json_dict(),
                        }
                    )
    return summary


def birth_edge_campaign(
    trials: int, seed: int, n_range=(3, 9), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """audit_birth_edges for both extractions on a random corpus."""
    summary = CampaignSummary("birth-edge-audit", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        for mode in ("weight", "edge"):
            summary.checks += 1
            audit = audit_birth_edges(extract_paths(g, mode))
            if not audit.ok:
                summary.failures.append(
                    {
                        "trial": t,
                        "graph": serialize_graph(g),
                        "mode": mode,
                        "audit": audit.to_json_dict(),
                    }
                )
    return summary


def mst_invariance_campaign(
    trials: int, seed: int, n_range=(3, 8), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """MST set equality for the weight-dominated extractions (both modes,
    alternating) on a random corpus."""
    summary = CampaignSummary("mst-invariance", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        summary.checks += 1
        mode = "weight" if t % 2 == 0 else "edge"
        pcf = extract_paths(g, mode)
        report = check_mst_invariance(pcf)
        if report.weight_dominated and not report.equal:
            summary.failures.append(
                {"trial": t, "graph": serialize_graph(g), "mode": mode}
            )
    return summary


def reduction_mst_campaign(
    trials: int, seed: int, n_range=(3, 8), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """The tree read off the reduction must always be one of the enumerated
    MSTs of the completion."""
    summary = CampaignSummary("reduction-mst-membership", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        summary.checks += 1
        mode = "weight" if t % 2 == 0 else "edge"
        pcf = extract_paths(g, mode)
        completion = graph_completion(pcf)
        d = distance_from_paths(pcf)
        cx = build_filtration(d, 1)
        tree = mst_from_reduction(reduce_matrix(cx), cx)
        valid = {
            tuple(sorted(t2.weighted_edges(completion)))
            for t2 in enumerate_msts(completion)
        }
        got = tuple(sorted((u, v, completion.weight(u, v)) for u, v in tree.edges))
        if got not in valid:
            summary.failures.append(
                {"trial": t, "graph": serialize_graph(g), "mode": mode, "tree": list(got)}
            )
    return summary


def oracle_campaign(
    trials: int, seed: int, ks=(0, 1, 2), n_range=(4, 7), p_range=(0.3, 0.8), w_range=(1, 10)
) -> CampaignSummary:
    """Reduction barcodes against the rank-based oracle, as multisets."""
    summary = CampaignSummary("oracle-equivalence", seed, trials)
    max_dim = max(ks) + 1
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        for mode in ("weight", "edge"):
            d = weight_distance(g) if mode == "weight" else edge_distance(g)
            cx = build_filtration(d, max_dim)
            rm = reduce_matrix(cx)
            for k in ks:
                summary.checks += 1
                engine = extract_barcode(rm, cx, k).multiset()
                oracle = naive_homology_oracle(cx, k).multiset()
                if engine != oracle:
                    summary.failures.append(
                        {
                            "trial": t,
                            "graph": serialize_graph(g),
                            "mode": mode,
                            "k": k,
                            "engine": [list(b) for b in engine],
                            "oracle": [list(b) for b in oracle],
                        }
                    )
    return summary


def permutation_invariance_campaign(
    trials: int,
    orderings_per_graph: int,
    seed: int,
    ks=(0, 1, 2),
    n_range=(4, 8),
    p_range=(0.3, 0.8),
    w_range=(1, 10),
) -> CampaignSummary:
    """Barcode multisets must not depend on the tie order of equal-valued
    simplices."""
    summary = CampaignSummary("permutation-invariance", seed, trials)
    max_dim = max(ks) + 1
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        d = weight_distance(g) if t % 2 == 0 else edge_distance(g)
        reference = {}
        cx = build_filtration(d, max_dim)
        rm = reduce_matrix(cx)
        for k in ks:
            reference[k] = extract_barcode(rm, cx, k).multiset()
        for s in range(orderings_per_graph):
            ordering = random_tie_ordering(_derive(seed, 7919 * t + s))
            cx2 = build_filtration(d, max_dim, ordering=ordering)
            rm2 = reduce_matrix(cx2)
            for k in ks:
                summary.checks += 1
                got = extract_barcode(rm2, cx2, k).multiset()
                if got != reference[k]:
                    summary.failures.append(
                        {
                            "trial": t,
                            "graph": serialize_graph(g),
                            "ordering": ordering.name,
                            "k": k,
                        }
                    )
    return summary


def k0_equality_campaign(
    trials: int, seed: int, n_range=(3, 10), p_range=(0.2, 0.9), w_range=(1, 10)
) -> CampaignSummary:
    """Dimension-0 barcodes of the two built-in distances coincide as
    multisets."""
    summary = CampaignSummary("k0-equality", seed, trials)
    for t, g in _corpus(seed, trials, n_range, p_range, w_range):
        summary.checks += 1
        b_w = barcode_of_distance(weight_distance(g), 0, max_dim=1).multiset()
        b_e = barcode_of_distance(edge_distance(g), 0, max_dim=1).multiset()
        if b_w != b_e:
            summary.failures.append({"trial": t, "graph": serialize_graph(g)})
    return summary
