"""Independent barcode oracle via persistent Betti numbers.

No column reduction: for every pair of sublevel complexes X_s <= X_t the
persistent Betti number is computed from ranks of boundary maps,

    beta_k(s, t) = dim Z_k(X_s) - dim (B_k(X_t) intersect Z_k(X_s)),

where the intersection dimension is rank(D_{k+1}^t) minus the rank of the
same matrix restricted to rows outside X_s (a boundary chain supported on
X_s is automatically a cycle of X_s). Bar multiplicities then come from
inclusion-exclusion over the grid of filtration values. Matrices live as
integer bitmasks; rank is Gaussian elimination over the two-element field.
"""

from __future__ import annotations

import math

from .errors import BarbedError, CapExceededError
from .persistence import Bar, Barcode, FilteredComplex


def gf2_rank(columns: list[int]) -> int:
    basis: dict[int, int] = {}
    for col in columns:
        while col:
            msb = col.bit_length() - 1
            row = basis.get(msb)
            if row is None:
                basis[msb] = col
                break
            col ^= row
    return len(basis)


def naive_homology_oracle(cx: FilteredComplex, k: int, vertex_cap: int = 7) -> Barcode:
    """Barcode of dimension k as a multiset of bars (no birth-simplex
    annotations), computed independently of the reduction engine."""
    if cx.n > vertex_cap:
        raise CapExceededError(
            f"oracle capped at {vertex_cap} vertices, got {cx.n}", required=cx.n
        )
    if not 0 <= k <= cx.max_dim - 1:
        raise BarbedError(f"k must be in [0, {cx.max_dim - 1}], got {k}")

    def layer(dim: int) -> list[tuple[tuple[int, ...], float]]:
        out = [
            (s, f)
            for s, f in zip(cx.simplices, cx.values)
            if len(s) == dim + 1
        ]
        out.sort(key=lambda e: (e[1], e[0]))
        return out

    k_layer = layer(k)
    kp1_layer = layer(k + 1)
    km1_layer = layer(k - 1) if k >= 1 else []
    k_pos = {s: i for i, (s, _) in enumerate(k_layer)}
    km1_pos = {s: i for i, (s, _) in enumerate(km1_layer)}

    def faces(s: tuple[int, ...]) -> list[tuple[int, ...]]:
        return [s[:i] + s[i + 1 :] for i in range(len(s))]

    cols_k = []
    for s, _ in k_layer:
        mask = 0
        if k >= 1:
            for face in faces(s):
                mask |= 1 << km1_pos[face]
        cols_k.append(mask)
    cols_kp1 = []
    for s, _ in kp1_layer:
        mask = 0
        for face in faces(s):
            mask |= 1 << k_pos[face]
        cols_kp1.append(mask)

    grid = sorted(set(cx.values))
    m = len(grid) - 1

    # prefix counts: how many simplices of each layer are present at grid[s]
    def prefix_counts(lay) -> list[int]:
        counts = []
        i = 0
        for a in grid:
            while i < len(lay) and lay[i][1] <= a:
                i += 1
            counts.append(i)
        return counts

    k_counts = prefix_counts(k_layer)
    kp1_counts = prefix_counts(kp1_layer)

    cycle_dim = [
        k_counts[s] - gf2_rank(cols_k[: k_counts[s]]) for s in range(len(grid))
    ]
    all_rows = (1 << len(k_layer)) - 1
    inside_mask = [
        sum(1 << i for i in range(k_counts[s])) for s in range(len(grid))
    ]

    def betti(s: int, t: int) -> int:
        if s < 0:
            return 0
        boundary_cols = cols_kp1[: kp1_counts[t]]
        rank_full = gf2_rank(boundary_cols)
        outside = all_rows & ~inside_mask[s]
        rank_outside = gf2_rank([c & outside for c in boundary_cols])
        return cycle_dim[s] - (rank_full - rank_outside)

    cache: dict[tuple[int, int], int] = {}

    def b(s: int, t: int) -> int:
        if (s, t) not in cache:
            cache[(s, t)] = betti(s, t)
        return cache[(s, t)]

    bars: list[Bar] = []
    for s in range(len(grid)):
        for t in range(s + 1, len(grid)):
            mult = (b(s, t - 1) - b(s, t)) - (b(s - 1, t - 1) - b(s - 1, t))
            if mult < 0:
                raise BarbedError(f"negative multiplicity at grid ({s},{t})")
            bars.extend(Bar(grid[s], grid[t]) for _ in range(mult))
        mult_inf = b(s, m) - b(s - 1, m)
        if mult_inf < 0:
            raise BarbedError(f"negative essential multiplicity at grid {s}")
        bars.extend(Bar(grid[s], math.inf) for _ in range(mult_inf))
    bars.sort(key=lambda bar: (bar.birth, bar.death))
    return Barcode(k, tuple(bars))
