import random

import pytest
from hypothesis import given, strategies as st

from flowpoly.digraph import (
    Multigraph,
    build_complete,
    build_Gpq,
    build_kabc,
    build_kabc_S,
    build_path,
    random_multigraph,
    reduce,
    reduction_leaves,
    reverse,
)
from flowpoly.errors import GraphError
from flowpoly.refine import subdivide_kabc

seeds = st.integers(min_value=0, max_value=10**6)


def test_multigraph_validation():
    with pytest.raises(GraphError):
        Multigraph(1, ((1, 1),))
    with pytest.raises(GraphError):
        Multigraph(1, ((2, 1),))
    with pytest.raises(GraphError):
        Multigraph(1, ((0, 3),))


def test_build_kabc_counts():
    assert len(build_kabc(2, 1, 1, 1)) == 5
    assert (0, 3) not in build_kabc(2, 1, 1, 1).edges
    assert len(build_kabc(1, 3, 2, 5)) == 5
    assert len(build_kabc(2, 2, 1, 3)) == 9
    with pytest.raises(GraphError):
        build_kabc(0, 1, 1, 1)


@pytest.mark.parametrize("n,a,b,c", [(1, 1, 1, 0), (3, 2, 1, 2), (4, 1, 3, 1)])
def test_build_kabc_edge_formula(n, a, b, c):
    G = build_kabc(n, a, b, c)
    assert len(G) == (a + b) * n + c * n * (n - 1) // 2
    assert list(G.edges) == sorted(G.edges)


def test_complete_graph_has_source_sink_edge():
    G = build_complete(2)
    assert len(G) == 6
    assert (0, 3) in G.edges


def test_build_kabc_S():
    base = build_kabc(2, 1, 1, 1)
    empty = build_kabc_S(2, 1, 1, 1, [])
    assert empty.edge_multiset() - base.edge_multiset() == {(0, 3): 2}
    full = build_kabc_S(2, 1, 1, 1, {1, 2})
    assert full.indeg(1) == 0
    assert sum(1 for e in full.edges if e == (1, 3)) == 2
    assert sum(1 for e in full.edges if e == (2, 3)) == 2
    assert sum(1 for e in full.edges if e == (0, 3)) == 2
    assert len(full) == 2 * 2 + 1 + 2
    with pytest.raises(GraphError):
        build_kabc_S(2, 1, 1, 1, {3})


def test_gpq_and_reverse():
    G = build_Gpq(2, 3)
    assert len(G) == 5
    assert reverse(G).same_edges(build_Gpq(3, 2))


@given(seeds)
def test_reverse_is_involution(seed):
    G = random_multigraph(random.Random(seed))
    assert reverse(reverse(G)) == G


@given(seeds)
def test_reverse_swaps_degrees(seed):
    G = random_multigraph(random.Random(seed))
    R = reverse(G)
    assert len(R) == len(G)
    for i in G.internal_vertices():
        assert R.indeg(i) == G.outdeg(G.n + 1 - i)
        assert R.outdeg(i) == G.indeg(G.n + 1 - i)


@pytest.mark.parametrize("n,a,b,c", [(1, 2, 1, 0), (2, 1, 3, 2), (3, 2, 2, 1)])
def test_reverse_kabc(n, a, b, c):
    assert reverse(build_kabc(n, a, b, c)).same_edges(build_kabc(n, b, a, c))


@pytest.mark.parametrize("n,a,b,c", [(2, 1, 1, 1), (3, 2, 1, 2), (2, 3, 2, 0)])
def test_reverse_kabc_S(n, a, b, c):
    full = set(range(1, n + 1))
    for S in [set(), {1}, {n}, {1, 2}, full]:
        left = reverse(build_kabc_S(n, a, b, c, S))
        mirrored = {n + 1 - s for s in full - S}
        assert left.same_edges(build_kabc_S(n, b + 1, a - 1, c, mirrored))


def test_reduce_path():
    G = build_path(1)
    g1, g2 = reduce(G, 0, 1)
    assert g1.edges == ((0, 1), (0, 2))
    assert g2.edges == ((0, 2), (1, 2))
    with pytest.raises(GraphError):
        reduce(G, 1, 0)


@given(seeds)
def test_reduce_preserves_edge_count(seed):
    rng = random.Random(seed)
    G = random_multigraph(rng)
    v = rng.randint(1, G.n)
    g1, g2 = reduce(G, G.in_edges(v)[0], G.out_edges(v)[0])
    assert len(g1) == len(g2) == len(G)


def test_subdivision_of_kabc_gives_S_graphs():
    leaves = subdivide_kabc(2, 1, 1, 1)
    assert len(leaves) == 4
    assert [len(S) for S, _ in leaves] == [0, 1, 1, 2]
    for S, G in leaves:
        assert G.same_edges(build_kabc_S(2, 1, 1, 1, S))


def test_reduction_leaves_fixed_point():
    G = build_path(3)
    assert reduction_leaves(G) == [G]


def test_reduction_leaves_complete_graphs():
    assert len(reduction_leaves(build_complete(2))) == 1
    assert len(reduction_leaves(build_complete(3))) == 2
    assert len(reduction_leaves(build_complete(4))) == 10


def test_reduction_leaves_rejects_extra_sources():
    with pytest.raises(GraphError):
        reduction_leaves(Multigraph(2, ((0, 1), (1, 3), (2, 3))))


@pytest.mark.parametrize("index", range(10))
def test_leaf_count_independent_of_order(index):
    G = random_multigraph(random.Random(100 + index))
    expected = len(reduction_leaves(G))
    for seed in range(10):
        leaves = reduction_leaves(G, random.Random(seed))
        assert len(leaves) == expected
        for leaf in leaves:
            assert leaf.has_unique_source_sink()
            assert all(leaf.outdeg(v) == 1 for v in leaf.internal_vertices())


def test_json_round_trip():
    G = build_kabc(2, 2, 1, 1)
    assert Multigraph.from_json(G.to_json()) == G
    with pytest.raises(GraphError):
        Multigraph.from_json({"edges": []})
