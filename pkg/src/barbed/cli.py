"""Command-line front end.

Every subcommand is a thin composition over library operations and writes
a machine-readable report (JSON by default, byte-stable for fixed inputs
and seeds) or an aligned table. Exit codes: 0 = ran and verified, 1 = ran
but a verification found violations, 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .distances import compare_pointwise, edge_distance, weight_distance
from .errors import BarbedError
from .graph import WeightedGraph, parse_graph
from .oracle import naive_homology_oracle
from .paths import (
    classify_dominance,
    enumerate_pcfs,
    extract_paths,
    graph_completion,
    pcf_from_json_dict,
    pcf_to_json_dict,
)
from .persistence import build_filtration, extract_barcode, reduce_matrix
from .theorems import (
    check_mst_invariance,
    cost_dominated_distances,
    injection_campaign,
    poset_extremes,
    search_counterexample,
    verify_injection,
)

OK, VIOLATION, USAGE = 0, 1, 2


def _read_graph(path: str) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read(), name=path)
    except OSError as exc:
        raise BarbedError(f"cannot read graph file {path}: {exc}") from exc


def _resolve_pcf(g: WeightedGraph, spec: str):
    if spec in ("weight", "edge"):
        return extract_paths(g, spec)
    if spec.startswith("pcf:"):
        path = spec[4:]
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise BarbedError(f"cannot load pcf file {path}: {exc}") from exc
        return pcf_from_json_dict(data, graph=g)
    raise BarbedError(f"unknown distance spec {spec!r} (use weight, edge, or pcf:<file>)")


def _render_table(doc, indent: str = "") -> list[str]:
    lines = []
    if isinstance(doc, dict):
        width = max((len(str(k)) for k in doc), default=0)
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{indent}{key}:")
                lines.extend(_render_table(value, indent + "  "))
            else:
                lines.append(f"{indent}{str(key).ljust(width)}  {value}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_render_table(item, indent + "  "))
            else:
                lines.append(f"{indent}- {item}")
    else:
        lines.append(f"{indent}{doc}")
    return lines


def _emit(doc: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(_render_table(doc)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser, graph_required: bool = True) -> None:
    parser.add_argument("--graph", required=graph_required, help="edge-list file")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    parser.add_argument("--out", default=None, help="write output to this path")
    parser.add_argument("--format", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barbed",
        description="Persistence barcodes of weighted graphs under path-based distances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distances", help="all-pairs distance matrices and their comparison")
    _add_common(p)
    p.add_argument("--mode", choices=("weight", "edge", "both"), default="both")

    p = sub.add_parser("barcode", help="persistence barcode of one distance")
    _add_common(p)
    p.add_argument("--distance", default="weight", help="weight, edge, or pcf:<file>")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--simplex-cap", type=int, default=2_000_000)

    p = sub.add_parser("enumerate-pcf", help="all consistent path choice functions")
    _add_common(p)

    p = sub.add_parser("classify", help="dominance classification of a path system")
    _add_common(p)
    p.add_argument("--distance", default="weight", help="weight, edge, or pcf:<file>")

    p = sub.add_parser("completion", help="graph completion by a path system")
    _add_common(p)
    p.add_argument("--distance", default="weight", help="weight, edge, or pcf:<file>")

    p = sub.add_parser("mst-check", help="MST set of the graph vs its completion")
    _add_common(p)
    p.add_argument("--distance", default="weight", help="weight, edge, or pcf:<file>")

    p = sub.add_parser("verify-injection", help="birth-edge injection between two distances")
    _add_common(p, graph_required=False)
    p.add_argument("--small", default="weight", help="weight, edge, or pcf:<file>")
    p.add_argument("--large", default="edge", help="weight, edge, or pcf:<file>")
    p.add_argument("--trials", type=int, default=None,
                   help="run a seeded random campaign instead of a single graph")

    p = sub.add_parser("poset", help="extremes of the cost-dominated distance poset")
    _add_common(p)

    p = sub.add_parser("search-counterexample", help="randomized high-dimension search")
    _add_common(p, graph_required=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--n-range", type=int, nargs=2, default=(6, 10), metavar=("LO", "HI"))
    p.add_argument("--p-range", type=float, nargs=2, default=(0.4, 0.9), metavar=("LO", "HI"))
    p.add_argument("--w-range", type=int, nargs=2, default=(1, 10), metavar=("LO", "HI"))

    p = sub.add_parser("oracle-diff", help="reduction barcode against the rank oracle")
    _add_common(p)
    p.add_argument("--distance", default="weight", help="weight, edge, or pcf:<file>")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-dim", type=int, default=None)

    return parser


def _distance_for(g, spec):
    if spec == "weight":
        return weight_distance(g)
    if spec == "edge":
        return edge_distance(g)
    from .distances import distance_from_paths

    return distance_from_paths(_resolve_pcf(g, spec))


def _cmd_distances(args) -> int:
    g = _read_graph(args.graph)
    doc = {}
    if args.mode in ("weight", "both"):
        doc["weight"] = weight_distance(g).to_json_dict()
    if args.mode in ("edge", "both"):
        doc["edge"] = edge_distance(g).to_json_dict()
    if args.mode == "both":
        doc["comparison"] = compare_pointwise(
            weight_distance(g), edge_distance(g)
        ).value
    _emit(doc, args)
    return OK


def _cmd_barcode(args) -> int:
    g = _read_graph(args.graph)
    d = _distance_for(g, args.distance)
    max_dim = args.max_dim if args.max_dim is not None else args.k + 1
    cx = build_filtration(d, max_dim, simplex_cap=args.simplex_cap)
    bcd = extract_barcode(reduce_matrix(cx), cx, args.k)
    _emit(bcd.to_json_dict(), args)
    return OK


def _cmd_enumerate_pcf(args) -> int:
    g = _read_graph(args.graph)
    pcfs = enumerate_pcfs(g)
    _emit({"count": len(pcfs), "pcfs": [pcf_to_json_dict(p) for p in pcfs]}, args)
    return OK


def _cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    pcf = _resolve_pcf(g, args.distance)
    report = classify_dominance(pcf)
    _emit(
        {
            "pcf": pcf.pcf_id,
            "weight_dominated": report.weight_dominated,
            "cost_dominated": report.cost_dominated,
            "offending_edges": [[list(e), kind] for e, kind in report.offending_edges],
        },
        args,
    )
    return OK


def _cmd_completion(args) -> int:
    g = _read_graph(args.graph)
    pcf = _resolve_pcf(g, args.distance)
    completion = graph_completion(pcf)
    _emit(
        {
            "n": completion.vertex_count,
            "edges": [[u, v, w] for u, v, w in completion.edges],
        },
        args,
    )
    return OK


def _cmd_mst_check(args) -> int:
    g = _read_graph(args.graph)
    pcf = _resolve_pcf(g, args.distance)
    report = check_mst_invariance(pcf)
    _emit(report.to_json_dict(), args)
    return VIOLATION if report.weight_dominated and not report.equal else OK


def _cmd_verify_injection(args) -> int:
    if args.trials is not None:
        summary = injection_campaign(args.trials, args.seed)
        _emit(summary.to_json_dict(), args)
        return OK if summary.ok else VIOLATION
    if not args.graph:
        raise BarbedError("verify-injection needs --graph or --trials")
    g = _read_graph(args.graph)
    report = verify_injection(g, _resolve_pcf(g, args.small), _resolve_pcf(g, args.large))
    _emit(report.to_json_dict(), args)
    return OK if report.ok else VIOLATION


def _cmd_poset(args) -> int:
    g = _read_graph(args.graph)
    pool = cost_dominated_distances(g)
    extremes = poset_extremes([d for _, d in pool])
    least_is_weight = (
        extremes.least is not None
        and pool[extremes.least][1].same_values(weight_distance(g))
    )
    _emit(
        {
            "count": len(pool),
            "pcf_ids": [pcf.pcf_id for pcf, _ in pool],
            "least": extremes.least,
            "greatest": extremes.greatest,
            "least_is_weight_distance": least_is_weight,
        },
        args,
    )
    return OK if extremes.least is not None else VIOLATION


def _cmd_search(args) -> int:
    witness = search_counterexample(
        args.k,
        args.trials,
        args.seed,
        tuple(args.n_range),
        tuple(args.p_range),
        tuple(args.w_range),
    )
    doc = {
        "k": args.k,
        "seed": args.seed,
        "trials": args.trials,
        "witness": witness.to_json_dict() if witness else None,
    }
    _emit(doc, args)
    return OK


def _cmd_oracle_diff(args) -> int:
    g = _read_graph(args.graph)
    d = _distance_for(g, args.distance)
    max_dim = args.max_dim if args.max_dim is not None else args.k + 1
    cx = build_filtration(d, max_dim)
    engine = extract_barcode(reduce_matrix(cx), cx, args.k)
    oracle = naive_homology_oracle(cx, args.k)
    equal = engine.multiset() == oracle.multiset()
    _emit(
        {
            "k": args.k,
            "engine": engine.to_json_dict(),
            "oracle": oracle.to_json_dict(),
            "equal": equal,
        },
        args,
    )
    return OK if equal else VIOLATION


_HANDLERS = {
    "distances": _cmd_distances,
    "barcode": _cmd_barcode,
    "enumerate-pcf": _cmd_enumerate_pcf,
    "classify": _cmd_classify,
    "completion": _cmd_completion,
    "mst-check": _cmd_mst_check,
    "verify-injection": _cmd_verify_injection,
    "poset": _cmd_poset,
    "search-counterexample": _cmd_search,
    "oracle-diff": _cmd_oracle_diff,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except BarbedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
