"""Combinatorics layer: ranking, arcs, shells, intersection numbers."""

from collections import Counter
from itertools import combinations
from math import comb

import numpy as np
import pytest

from jwalk import johnson
from jwalk.errors import DegenerateInstanceError


def all_subsets(n, k):
    return list(combinations(range(1, n + 1), k))


def test_graph_params_derived_sizes():
    p = johnson.graph_params(6, 2)
    assert (p.num_vertices, p.degree, p.num_arcs) == (15, 8, 120)
    p = johnson.graph_params(10, 4)
    assert p.num_vertices == comb(10, 4)
    assert p.degree == 4 * 6
    assert p.num_arcs == p.num_vertices * p.degree


@pytest.mark.parametrize("n,k", [(5, 3), (3, 2), (7, 4)])
def test_graph_params_rejects_small_n(n, k):
    with pytest.raises(ValueError, match="n >= 2k"):
        johnson.graph_params(n, k)


def test_graph_params_rejects_degenerate_and_bad_k():
    with pytest.raises(DegenerateInstanceError, match="degenerate"):
        johnson.graph_params(2, 1)
    with pytest.raises(ValueError, match="k >= 1"):
        johnson.graph_params(4, 0)


def test_unrank_first_subset():
    p = johnson.graph_params(4, 2)
    assert johnson.unrank_vertex(p, 0) == (1, 2)


def test_unrank_out_of_range():
    p = johnson.graph_params(4, 2)
    with pytest.raises(ValueError):
        johnson.unrank_vertex(p, 6)
    with pytest.raises(ValueError):
        johnson.unrank_vertex(p, -1)


@pytest.mark.parametrize("n,k", [(6, 2), (7, 3), (12, 2), (14, 7), (20, 4)])
def test_rank_unrank_bijection_exhaustive(n, k):
    p = johnson.graph_params(n, k)
    seen = set()
    for r in range(p.num_vertices):
        sub = johnson.unrank_vertex(p, r)
        assert len(sub) == k and all(sub[i] < sub[i + 1] for i in range(k - 1))
        assert 1 <= sub[0] and sub[-1] <= n
        assert johnson.rank_vertex(p, sub) == r
        seen.add(sub)
    assert seen == set(all_subsets(n, k))


@pytest.mark.parametrize("n,k", [(6, 2), (7, 3)])
def test_rank_is_colexicographic(n, k):
    p = johnson.graph_params(n, k)
    colex = sorted(all_subsets(n, k), key=lambda s: tuple(reversed(s)))
    for r, sub in enumerate(colex):
        assert johnson.rank_vertex(p, sub) == r


def test_rank_rejects_malformed():
    p = johnson.graph_params(6, 2)
    with pytest.raises(ValueError):
        johnson.rank_vertex(p, (1, 2, 3))
    with pytest.raises(ValueError):
        johnson.rank_vertex(p, (2, 2))
    with pytest.raises(ValueError):
        johnson.rank_vertex(p, (3, 1))
    with pytest.raises(ValueError):
        johnson.rank_vertex(p, (1, 7))


def test_arc_head_example():
    p = johnson.graph_params(4, 2)
    tail = johnson.rank_vertex(p, (1, 2))
    arc = tail * p.degree  # removes 1, inserts 3 (first complement element)
    assert johnson.arc_components(p, arc) == (tail, 1, 3)
    assert johnson.unrank_vertex(p, johnson.arc_head(p, arc)) == (2, 3)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 2)])
def test_arc_head_adjacent_for_all_arcs(n, k):
    p = johnson.graph_params(n, k)
    for arc in range(p.num_arcs):
        tail, removed, inserted = johnson.arc_components(p, arc)
        tail_set = set(johnson.unrank_vertex(p, tail))
        head_set = set(johnson.unrank_vertex(p, johnson.arc_head(p, arc)))
        assert removed in tail_set and inserted not in tail_set
        assert head_set == (tail_set - {removed}) | {inserted}
        assert len(tail_set & head_set) == k - 1


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2)])
def test_arc_opposite_fixed_point_free_involution(n, k):
    p = johnson.graph_params(n, k)
    for arc in range(p.num_arcs):
        opp = johnson.arc_opposite(p, arc)
        assert opp != arc
        assert johnson.arc_opposite(p, opp) == arc
        assert johnson.arc_head(p, opp) == arc // p.degree
        assert johnson.arc_head(p, arc) == opp // p.degree


def test_arc_opposite_example():
    p = johnson.graph_params(4, 2)
    arc = johnson.rank_vertex(p, (1, 2)) * p.degree  # {1,2}: 1 out, 3 in
    opp = johnson.arc_opposite(p, arc)
    assert johnson.arc_components(p, opp) == (johnson.rank_vertex(p, (2, 3)), 3, 1)


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3)])
def test_opposite_permutation_matches_scalar(n, k):
    p = johnson.graph_params(n, k)
    table = johnson.opposite_permutation(p)
    assert table.dtype == np.int64
    assert np.array_equal(table[table], np.arange(p.num_arcs))
    for arc in range(p.num_arcs):
        assert table[arc] == johnson.arc_opposite(p, arc)


def test_distance_class():
    p = johnson.graph_params(4, 2)
    w = johnson.rank_vertex(p, (1, 2))
    assert johnson.distance_class(p, w, w) == 0
    assert johnson.distance_class(p, johnson.rank_vertex(p, (3, 4)), w) == 2

    p6 = johnson.graph_params(6, 2)
    w6 = johnson.rank_vertex(p6, (1, 2))
    counts = Counter(johnson.distance_class(p6, v, w6)
                     for v in range(p6.num_vertices))
    assert [counts[l] for l in range(3)] == [1, 8, 6]


@pytest.mark.parametrize("n,k,expected", [(4, 2, [1, 4, 1]), (6, 2, [1, 8, 6])])
def test_shell_sizes_brute_force(n, k, expected):
    p = johnson.graph_params(n, k)
    w = set(range(1, k + 1))
    counts = Counter(k - len(w & set(sub)) for sub in all_subsets(n, k))
    assert [johnson.shell_size(p, l) for l in range(k + 1)] == expected
    assert [counts[l] for l in range(k + 1)] == expected


def test_shell_size_level_zero_and_range():
    for n, k in [(4, 2), (9, 3), (12, 6)]:
        p = johnson.graph_params(n, k)
        assert johnson.shell_size(p, 0) == 1
        with pytest.raises(ValueError):
            johnson.shell_size(p, k + 1)
        with pytest.raises(ValueError):
            johnson.shell_size(p, -1)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("n_extra", [0, 1, 5, 20])
def test_shell_sizes_sum_to_vertex_count(k, n_extra):
    n = 2 * k + n_extra
    if (n, k) == (2, 1):
        return
    p = johnson.graph_params(n, k)
    assert sum(johnson.shell_size(p, l) for l in range(k + 1)) == p.num_vertices


@pytest.mark.parametrize("n,k", [(4, 2), (6, 2), (7, 3)])
def test_intersection_numbers_exhaustive(n, k):
    # classify each vertex's neighbors by shell, from scratch
    p = johnson.graph_params(n, k)
    subsets = all_subsets(n, k)
    w = set(range(1, k + 1))
    shell = {sub: k - len(w & set(sub)) for sub in subsets}
    for v in subsets:
        neighbors = [u for u in subsets if len(set(u) & set(v)) == k - 1]
        assert len(neighbors) == p.degree
        row = johnson.intersection_numbers(p, shell[v])
        tally = Counter(shell[u] - shell[v] for u in neighbors)
        assert tally[0] == row.a
        assert tally[1] == row.b
        assert tally[-1] == row.c


def test_intersection_number_examples():
    p4 = johnson.graph_params(4, 2)
    rows = [johnson.intersection_numbers(p4, l) for l in range(3)]
    assert [r.a for r in rows] == [0, 2, 0]
    assert [r.b for r in rows] == [4, 1, 0]
    assert [r.c for r in rows] == [0, 1, 4]

    p6 = johnson.graph_params(6, 2)
    rows = [johnson.intersection_numbers(p6, l) for l in range(3)]
    assert [r.a for r in rows] == [0, 4, 4]
    assert [r.b for r in rows] == [8, 3, 0]
    assert [r.c for r in rows] == [0, 1, 4]
    assert all(r.a + r.b + r.c == 8 for r in rows)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("n_extra", [0, 1, 7, 33])
def test_intersection_rows_sum_to_degree(k, n_extra):
    n = 2 * k + n_extra
    if (n, k) == (2, 1):
        return
    p = johnson.graph_params(n, k)
    for l in range(k + 1):
        row = johnson.intersection_numbers(p, l)
        assert row.a + row.b + row.c == p.degree
    assert johnson.intersection_numbers(p, 0).b == p.degree  # b_0 = d
    assert johnson.intersection_numbers(p, 0).a == 0
    assert johnson.intersection_numbers(p, 0).c == 0
    assert johnson.intersection_numbers(p, k).b == 0


def test_intersection_numbers_range_error():
    p = johnson.graph_params(6, 2)
    with pytest.raises(ValueError):
        johnson.intersection_numbers(p, 3)
