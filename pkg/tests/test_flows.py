import random
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from flowpoly.digraph import build_complete, build_Gpq, build_kabc, build_path, random_multigraph, reverse
from flowpoly.errors import GraphError, NetflowError
from flowpoly.flows import (
    ehrhart_volume,
    enumerate_flows,
    flow_dimension,
    is_flow,
    kpf,
    routes,
)

from conftest import random_graphs

seeds = st.integers(min_value=0, max_value=10**6)


def brute_force_count(G, a, cap):
    return sum(is_flow(G, f, a) for f in product(range(cap + 1), repeat=len(G)))


def test_zero_netflow_has_only_zero_flow():
    G = build_complete(2)
    assert enumerate_flows(G, (0, 0, 0, 0)) == [(0,) * 6]
    assert kpf(G, (0, 0, 0, 0)) == 1


def test_gpq_lattice_points():
    for p in range(1, 5):
        for q in range(1, 5):
            G = build_Gpq(p, q)
            assert kpf(G, (0, p - 1, 1 - p)) == comb(p + q - 2, p - 1)
    assert len(enumerate_flows(build_Gpq(2, 2), (0, 1, -1))) == 2


def test_k4_single_flow():
    G = build_complete(2)
    flows = enumerate_flows(G, (0, 0, 1, -1))
    assert len(flows) == 1
    assert flows[0][G.edges.index((2, 3))] == 1
    assert sum(flows[0]) == 1


def test_k4_brute_force():
    G = build_complete(2)
    for a in [(0, 0, 1, -1), (0, 1, 1, -2), (2, 0, 1, -3)]:
        assert kpf(G, a) == brute_force_count(G, a, 3)


def test_kpf_catalan_products():
    G = build_complete(4)
    assert kpf(G, (0, 0, 1, 2, 3, -6)) == 10
    G = build_complete(5)
    assert kpf(G, G.indegree_netflow()) == 140


def test_kpf_morris_example():
    assert kpf(build_kabc(2, 2, 1, 1), (0, 1, 2, -3)) == 2


def test_netflow_length_checked():
    with pytest.raises(NetflowError):
        kpf(build_path(1), (0, 0))
    with pytest.raises(NetflowError):
        enumerate_flows(build_path(1), (0, 0, 0, 0))


def test_infeasible_is_zero():
    assert kpf(build_path(1), (0, 1, 0)) == 0
    assert enumerate_flows(build_path(1), (1, 0, 0)) == []


@given(seeds, st.lists(st.integers(min_value=-2, max_value=2), min_size=4, max_size=4))
def test_enumeration_matches_count(seed, extra):
    G = random_multigraph(random.Random(seed), max_n=2)
    a = [0] * (G.n + 2)
    for i, x in enumerate(extra[: G.n + 1]):
        a[i] = x
    a[-1] = -sum(a[:-1])
    flows = enumerate_flows(G, a)
    assert len(flows) == kpf(G, a)
    assert flows == sorted(flows)
    assert all(is_flow(G, f, a) for f in flows)


@pytest.mark.parametrize("G", random_graphs(20, seed=7))
def test_kpf_reverse_symmetry(G):
    R = reverse(G)
    assert kpf(G, G.indegree_netflow()) == kpf(R, R.indegree_netflow())


def test_routes():
    assert len(routes(build_Gpq(2, 2))) == 4
    assert routes(build_path(3)) == [(0, 1, 2, 3)]
    assert len(routes(build_kabc(2, 1, 1, 1))) == 3
    assert len(routes(build_complete(2))) == 4


def test_ehrhart_examples():
    assert ehrhart_volume(build_Gpq(2, 2), (1, 0, -1)) == 2
    assert ehrhart_volume(build_path(2), (1, 0, 0, -1)) == 1
    assert ehrhart_volume(build_complete(3), (1, 0, 0, 0, -1)) == 2
    assert flow_dimension(build_complete(3)) == 10 - 4


def test_ehrhart_rejects_empty():
    with pytest.raises(GraphError):
        ehrhart_volume(build_path(1), (0, -1, 1))


@pytest.mark.parametrize("G", random_graphs(20, seed=11))
def test_ehrhart_matches_indegree_kpf(G):
    unit = (1,) + (0,) * G.n + (-1,)
    assert ehrhart_volume(G, unit) == kpf(G, G.indegree_netflow())
