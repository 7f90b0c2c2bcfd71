"""Combinatorics of the Johnson graph J(n, k).

Vertices are the k-subsets of {1, ..., n}, adjacent when they share k-1
elements.  Vertices are identified with their colexicographic rank, and
every directed edge (arc) is identified with a flat index

    arc = tail_rank * degree + slot,
    slot = removed_index * (n - k) + inserted_index,

where ``removed_index`` positions the outgoing element inside the sorted
tail subset and ``inserted_index`` positions the incoming element inside
the sorted complement of the tail.  All combinatorial quantities are exact
Python integers; subsets are 1-based tuples at the API surface.
"""

from bisect import bisect_left
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegenerateInstanceError

__all__ = [
    "GraphParams",
    "IntersectionRow",
    "graph_params",
    "rank_vertex",
    "unrank_vertex",
    "arc_head",
    "arc_opposite",
    "arc_components",
    "opposite_permutation",
    "distance_class",
    "shell_size",
    "intersection_numbers",
]


@dataclass(frozen=True)
class GraphParams:
    """Instance parameters of J(n, k) with derived sizes."""

    n: int
    k: int
    num_vertices: int   # C(n, k)
    degree: int         # k * (n - k)
    num_arcs: int       # num_vertices * degree == 2 * |E|


@dataclass(frozen=True)
class IntersectionRow:
    """Neighbor counts of a vertex at distance ``level`` from a fixed vertex.

    ``a`` neighbors stay in the same distance shell, ``b`` move one shell
    out, ``c`` move one shell in; a + b + c equals the degree.
    """

    level: int
    a: int
    b: int
    c: int


def graph_params(n: int, k: int) -> GraphParams:
    """Validate (n, k) and build the parameter record.

    Requires n >= 2k so the graph has diameter k.  J(2, 1) is refused:
    its smallest adjacency eigenvalue equals -degree, which leaves the
    walk eigenphases undefined.
    """
    if k < 1:
        raise ValueError(f"J(n,k) requires k >= 1 (got k={k})")
    if n < 2 * k:
        raise ValueError(f"J(n,k) requires n >= 2k (got n={n}, k={k})")
    if (n, k) == (2, 1):
        raise DegenerateInstanceError(
            "degenerate instance J(2,1): smallest eigenvalue equals -degree")
    return GraphParams(
        n=n,
        k=k,
        num_vertices=comb(n, k),
        degree=k * (n - k),
        num_arcs=comb(n, k) * k * (n - k),
    )


def rank_vertex(params: GraphParams, subset) -> int:
    """Colexicographic rank of a sorted k-subset of {1, ..., n}."""
    sub = tuple(subset)
    if len(sub) != params.k:
        raise ValueError(f"expected a {params.k}-subset, got {sub!r}")
    prev = 0
    rank = 0
    for i, e in enumerate(sub, start=1):
        if not prev < e <= params.n:
            raise ValueError(f"subset must be strictly increasing in [1,{params.n}]: {sub!r}")
        prev = e
        rank += comb(e - 1, i)
    return rank


def unrank_vertex(params: GraphParams, rank: int) -> tuple:
    """Inverse of :func:`rank_vertex`; returns the sorted 1-based subset."""
    if not 0 <= rank < params.num_vertices:
        raise ValueError(f"vertex rank {rank} out of range [0, {params.num_vertices})")
    out = []
    r = rank
    for i in range(params.k, 0, -1):
        # largest e with C(e-1, i) <= r
        e = i  # smallest possible value of the i-th largest element
        c = comb(e - 1, i)
        while True:
            c_next = comb(e, i)
            if c_next > r:
                break
            e += 1
            c = c_next
        out.append(e)
        r -= c
    return tuple(reversed(out))


def _complement(params: GraphParams, subset) -> list:
    members = set(subset)
    return [e for e in range(1, params.n + 1) if e not in members]


def arc_components(params: GraphParams, arc: int) -> tuple:
    """Decode an arc index into (tail_rank, removed_element, inserted_element)."""
    if not 0 <= arc < params.num_arcs:
        raise ValueError(f"arc index {arc} out of range [0, {params.num_arcs})")
    d = params.degree
    tail, slot = divmod(arc, d)
    removed_idx, inserted_idx = divmod(slot, params.n - params.k)
    tail_subset = unrank_vertex(params, tail)
    removed = tail_subset[removed_idx]
    inserted = _complement(params, tail_subset)[inserted_idx]
    return tail, removed, inserted


def arc_head(params: GraphParams, arc: int) -> int:
    """Rank of the head vertex: the tail with one element swapped out."""
    tail, removed, inserted = arc_components(params, arc)
    tail_subset = unrank_vertex(params, tail)
    head_subset = sorted(e for e in tail_subset if e != removed)
    head_subset.insert(bisect_left(head_subset, inserted), inserted)
    return rank_vertex(params, head_subset)


def arc_opposite(params: GraphParams, arc: int) -> int:
    """Index of the reversed arc; a fixed-point-free involution."""
    tail, removed, inserted = arc_components(params, arc)
    tail_subset = unrank_vertex(params, tail)
    head_subset = sorted(e for e in tail_subset if e != removed)
    head_subset.insert(bisect_left(head_subset, inserted), inserted)
    head = rank_vertex(params, head_subset)
    # reversed swap: `inserted` leaves the head, `removed` re-enters
    removed_idx = bisect_left(head_subset, inserted)
    inserted_idx = (removed - 1) - bisect_left(head_subset, removed)
    slot = removed_idx * (params.n - params.k) + inserted_idx
    return head * params.degree + slot


def opposite_permutation(params: GraphParams) -> np.ndarray:
    """Arc-reversal permutation as an int64 array over all arcs.

    Head ranks are recoverable as ``opposite_permutation(p) // p.degree``.
    """
    n, k, d = params.n, params.k, params.degree
    m = n - k
    opp = np.empty(params.num_arcs, dtype=np.int64)
    for tail in range(params.num_vertices):
        tail_subset = unrank_vertex(params, tail)
        complement = _complement(params, tail_subset)
        base = tail * d
        for removed_idx, removed in enumerate(tail_subset):
            head_minus = [e for e in tail_subset if e != removed]
            for inserted_idx, inserted in enumerate(complement):
                pos = bisect_left(head_minus, inserted)
                head_subset = head_minus[:pos] + [inserted] + head_minus[pos:]
                head = rank_vertex(params, head_subset)
                rev_removed_idx = pos
                rev_inserted_idx = (removed - 1) - bisect_left(head_subset, removed)
                opp[base + removed_idx * m + inserted_idx] = (
                    head * d + rev_removed_idx * m + rev_inserted_idx)
    opp.setflags(write=False)
    return opp


def distance_class(params: GraphParams, v: int, w: int) -> int:
    """Shortest-path distance between two vertex ranks: k - |v ∩ w|."""
    vs = unrank_vertex(params, v)
    ws = set(unrank_vertex(params, w))
    return params.k - sum(1 for e in vs if e in ws)


def shell_size(params: GraphParams, level: int) -> int:
    """Number of vertices at distance ``level`` from any fixed vertex."""
    if not 0 <= level <= params.k:
        raise ValueError(f"distance level {level} out of range [0, {params.k}]")
    return comb(params.k, level) * comb(params.n - params.k, level)


def intersection_numbers(params: GraphParams, level: int) -> IntersectionRow:
    """Intersection numbers of J(n, k) at the given distance level.

    a = level*(n - 2*level), b = (k - level)*(n - k - level), c = level**2.
    """
    if not 0 <= level <= params.k:
        raise ValueError(f"distance level {level} out of range [0, {params.k}]")
    n, k = params.n, params.k
    return IntersectionRow(
        level=level,
        a=level * (n - 2 * level),
        b=(k - level) * (n - k - level),
        c=level * level,
    )
