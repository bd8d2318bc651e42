"""Vietoris-Rips filtrations over distance matrices and persistence over
the two-element field.

A simplex enters the filtration at the maximum pairwise distance of its
vertices (vertices at 0). The boundary matrix is reduced by the standard
left-to-right column algorithm: while some earlier column shares this
column's lowest nonzero row, add it in (symmetric difference of index
sets). Columns that reduce to zero create classes; a later column whose
low points at index i kills the class born at simplex i. Pairs with equal
filtration values are kept in the reduced matrix but never become bars.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .errors import BarbedError, CapExceededError
from .distances import DistanceMatrix
from .mst import SpanningTree

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplexOrdering:
    """Secondary sort key refining the filtration order; ties between
    equal-valued simplices of the same dimension are broken by ``key``."""

    name: str
    key: Callable[[Simplex], object] = field(compare=False)


def vertex_ordering() -> SimplexOrdering:
    return SimplexOrdering("vertex", lambda s: s)


def random_tie_ordering(seed: int) -> SimplexOrdering:
    def key(s: Simplex):
        digest = hashlib.blake2b(
            repr((seed, s)).encode(), digest_size=8
        ).digest()
        return (int.from_bytes(digest, "big"), s)

    return SimplexOrdering(f"random({seed})", key)


@dataclass(frozen=True)
class FilteredComplex:
    n: int
    max_dim: int
    simplices: tuple[Simplex, ...]
    values: tuple[float, ...]
    ordering_name: str = "vertex"

    def index(self) -> dict[Simplex, int]:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {s: i for i, s in enumerate(self.simplices)}
            self.__dict__["_index"] = cached
        return cached

    def dim(self, i: int) -> int:
        return len(self.simplices[i]) - 1

    def value_of(self, s: Simplex) -> float:
        return self.values[self.index()[s]]


def simplex_budget(n: int, max_dim: int) -> tuple[int, int]:
    """(total simplex count, count at the top dimension) for the full
    (max_dim)-skeleton on n vertices."""
    total = 0
    top = 0
    for size in range(1, max_dim + 2):
        top = math.comb(n, size)
        total += top
    return total, top


def build_filtration(
    d: DistanceMatrix,
    max_dim: int,
    ordering: SimplexOrdering | None = None,
    simplex_cap: int = 2_000_000,
) -> FilteredComplex:
    """All simplices of dimension <= max_dim with their entry values,
    sorted by (value, dimension, ordering key)."""
    n = d.n
    if not 1 <= max_dim <= n - 1:
        raise BarbedError(f"max_dim must be in [1, {n - 1}], got {max_dim}")
    total, top = simplex_budget(n, max_dim)
    if total > simplex_cap:
        raise CapExceededError(
            f"filtration needs {total} simplices "
            f"({top} alone at dimension {max_dim}, C({n},{max_dim + 1}) = {top}); "
            f"cap is {simplex_cap}",
            required=total,
        )
    if ordering is None:
        ordering = vertex_ordering()
    entries: list[tuple[float, int, object, Simplex]] = []
    for size in range(1, max_dim + 2):
        for combo in combinations(range(n), size):
            if size == 1:
                f = 0.0
            else:
                f = max(d.values[u][v] for u, v in combinations(combo, 2))
            entries.append((f, size, ordering.key(combo), combo))
    entries.sort()
    return FilteredComplex(
        n,
        max_dim,
        tuple(e[3] for e in entries),
        tuple(e[0] for e in entries),
        ordering.name,
    )


@dataclass(frozen=True)
class ReducedMatrix:
    columns: tuple[frozenset[int], ...]
    v_columns: tuple[frozenset[int], ...]
    low: dict[int, int]
    pairs: tuple[tuple[int, int], ...]
    essential: tuple[int, ...]


def boundary_columns(cx: FilteredComplex) -> list[set[int]]:
    index = cx.index()
    cols: list[set[int]] = []
    for s in cx.simplices:
        if len(s) == 1:
            cols.append(set())
        else:
            cols.append({index[s[:i] + s[i + 1 :]] for i in range(len(s))})
    return cols


def reduce_matrix(cx: FilteredComplex) -> ReducedMatrix:
    """Left-to-right column reduction of the boundary matrix; columns are
    index sets over the two-element field, addition is symmetric
    difference."""
    cols = boundary_columns(cx)
    v_cols: list[set[int]] = [{j} for j in range(len(cols))]
    low_to_col: dict[int, int] = {}
    for j, col in enumerate(cols):
        while col:
            i = max(col)
            j_prev = low_to_col.get(i)
            if j_prev is None:
                break
            col ^= cols[j_prev]
            v_cols[j] ^= v_cols[j_prev]
        if col:
            low_to_col[max(col)] = j
    low = {j: i for i, j in low_to_col.items()}
    pairs = tuple(sorted((i, j) for i, j in low_to_col.items()))
    paired = set(low_to_col) | set(low_to_col.values())
    essential = tuple(
        j for j, col in enumerate(cols) if not col and j not in paired
    )
    return ReducedMatrix(
        tuple(frozenset(c) for c in cols),
        tuple(frozenset(c) for c in v_cols),
        low,
        pairs,
        essential,
    )


@dataclass(frozen=True)
class Bar:
    birth: float
    death: float
    birth_simplex: Simplex | None = None

    def finite(self) -> bool:
        return math.isfinite(self.death)


@dataclass(frozen=True)
class Barcode:
    k: int
    bars: tuple[Bar, ...]

    def multiset(self) -> tuple[tuple[float, float], ...]:
        return tuple(sorted((b.birth, b.death) for b in self.bars))

    def birth_edges(self) -> list[Simplex]:
        return [b.birth_simplex for b in self.bars if b.birth_simplex is not None]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "bars": [
                {
                    "birth": b.birth,
                    "death": "inf" if not b.finite() else b.death,
                    "birth_simplex": list(b.birth_simplex) if b.birth_simplex else None,
                }
                for b in self.bars
            ],
        }


def extract_barcode(rm: ReducedMatrix, cx: FilteredComplex, k: int) -> Barcode:
    """Bars of dimension k: finite ones from low pairs with strictly
    increasing values, infinite ones from unpaired zero columns."""
    if not 0 <= k <= cx.max_dim - 1:
        raise BarbedError(f"k must be in [0, {cx.max_dim - 1}], got {k}")
    bars = []
    for i, j in rm.pairs:
        if cx.dim(i) != k:
            continue
        birth, death = cx.values[i], cx.values[j]
        if birth < death:
            bars.append(Bar(birth, death, cx.simplices[i]))
    for i in rm.essential:
        if cx.dim(i) == k:
            bars.append(Bar(cx.values[i], math.inf, cx.simplices[i]))
    bars.sort(key=lambda b: (b.birth, b.death, b.birth_simplex))
    return Barcode(k, tuple(bars))


def canonical_ordering(cx: FilteredComplex, mst: SpanningTree) -> SimplexOrdering:
    """Tie key placing the given tree's edges before other equal-valued
    1-simplices; everything else ties by vertex tuple."""
    if mst.vertex_count != cx.n:
        raise BarbedError(
            f"tree spans {mst.vertex_count} vertices, complex has {cx.n}"
        )
    tree_edges = set(mst.edges)

    def key(s: Simplex):
        if len(s) == 2:
            return (0 if (s[0], s[1]) in tree_edges else 1, s)
        return (0, s)

    return SimplexOrdering(f"mst-first({sorted(tree_edges)})", key)


def mst_from_reduction(rm: ReducedMatrix, cx: FilteredComplex) -> SpanningTree:
    """The 1-simplices paired with 0-simplices by the reduction; on a
    connected instance they form a minimum spanning tree of the weighted
    1-skeleton."""
    edges = []
    total = 0.0
    for i, j in rm.pairs:
        if cx.dim(i) == 0:
            s = cx.simplices[j]
            edges.append((s[0], s[1]))
            total += cx.values[j]
    try:
        return SpanningTree(cx.n, frozenset(edges), total)
    except ValueError as exc:
        raise BarbedError(f"reduction pairing is not a spanning tree: {exc}") from exc
