"""Normalized volumes of flow polytopes F_G(1, 0, ..., 0, -1) and F_G(a).

Three independent routes: the indegree Kostant partition function, leaf
counts of the reduction tree, and the Lidskii sum over compositions.
"""

from __future__ import annotations

from typing import Sequence

from .digraph import Multigraph, reduction_leaves
from .errors import GraphError, NetflowError
from .exact import multinomial
from .flows import Flow, _compositions, kpf


def volume_via_kpf(G: Multigraph) -> int:
    """vol F_G(1,0,...,0,-1) = K_G(0, d_1, ..., d_n, -sum d_i), d_i = indeg(i) - 1."""
    G.require_unique_source_sink()
    return kpf(G, G.indegree_netflow())


def volume_via_subdivision(G: Multigraph) -> int:
    """Number of unimodular simplices left by the reduction algorithm."""
    return len(reduction_leaves(G))


def _edge_pair(G: Multigraph, e1: int, e2: int) -> tuple[int, int, int]:
    i, j = G.edges[e1]
    j2, k = G.edges[e2]
    if j != j2:
        raise GraphError(f"edges {e1} and {e2} do not meet head-to-tail")
    return i, j, k


def shifted_netflow(G: Multigraph, d: Sequence[int], e1: int, e2: int) -> tuple[int, ...]:
    """Net flow of the second reduction child: d - e_j + e_k."""
    _, j, k = _edge_pair(G, e1, e2)
    d2 = list(d)
    d2[j] -= 1
    d2[k] += 1
    return tuple(d2)


def phi1(G: Multigraph, f: Sequence[int], e1: int, e2: int) -> Flow:
    """Flow on G (y <= x) to flow on the first child, where e2 becomes (i,k)."""
    _edge_pair(G, e1, e2)
    x, y = f[e1], f[e2]
    if y > x:
        raise ValueError(f"phi1 needs f[e2] <= f[e1], got {y} > {x}")
    g = list(f)
    g[e1] = x - y
    g[e2] = y
    return tuple(g)


def phi2(G: Multigraph, f: Sequence[int], e1: int, e2: int) -> Flow:
    """Flow on G (y > x) to flow on the second child, where e1 becomes (i,k)."""
    _edge_pair(G, e1, e2)
    x, y = f[e1], f[e2]
    if y <= x:
        raise ValueError(f"phi2 needs f[e2] > f[e1], got {y} <= {x}")
    g = list(f)
    g[e2] = y - x - 1
    g[e1] = x
    return tuple(g)


def phi1_inverse(f: Sequence[int], e1: int, e2: int) -> Flow:
    g = list(f)
    g[e1] = f[e1] + f[e2]
    return tuple(g)


def phi2_inverse(f: Sequence[int], e1: int, e2: int) -> Flow:
    g = list(f)
    g[e2] = f[e2] + f[e1] + 1
    return tuple(g)


def split_flows(G: Multigraph, flows: Sequence[Sequence[int]], e1: int, e2: int):
    """Send each flow of G through phi1 or phi2; returns (to G1, to G2)."""
    left, right = [], []
    for f in flows:
        if f[e2] <= f[e1]:
            left.append(phi1(G, f, e1, e2))
        else:
            right.append(phi2(G, f, e1, e2))
    return left, right


def check_lidskii_input(G: Multigraph, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != G.n + 2:
        raise NetflowError(f"net flow has length {len(a)}, expected {G.n + 2}")
    if any(x > 0 for x in a[1:]):
        raise NetflowError("Lidskii form needs net flow <= 0 away from the source")
    if a[0] != -sum(a[1:]):
        raise NetflowError("source entry must equal the total demand")
    for v in range(G.n + 1):
        if G.outdeg(v) == 0:
            raise GraphError(f"vertex {v} has no outgoing edge")
    return a


def lidskii_volume(G: Multigraph, a: Sequence[int]) -> int:
    """Normalized volume of F_G(A, -a_1, ..., -a_{n+1}) with a_i >= 0.

    Sum over weak compositions j of |E| - n - 1 indexed by vertices
    1..n+1 of multinomial(j) * prod a_i^{j_i} * K_G(0, d_1 - j_1, ...,
    d_{n+1} - j_{n+1}), where d_i = indeg(i) - 1 for every non-source vertex,
    sink included.
    """
    a = check_lidskii_input(G, a)
    demand = [-x for x in a[1:]]
    d = [G.indeg(v) - 1 for v in range(1, G.n + 2)]
    top = len(G.edges) - G.n - 1
    if top < 0:
        return 0
    total = 0
    for j in _compositions(top, G.n + 1):
        weight = multinomial(top, j)
        for ai, ji in zip(demand, j):
            weight *= ai**ji
        if weight == 0:
            continue
        total += weight * kpf(G, (0, *(di - ji for di, ji in zip(d, j))))
    return total

