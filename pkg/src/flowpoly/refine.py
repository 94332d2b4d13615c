"""Enumerative readings of M, Psi and Phi on the graphs k_{n+2}^{a,b,c}.

Every value here comes from counting integer flows or from volumes of
flow polytopes; nothing calls the closed forms.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .digraph import Multigraph, build_kabc, build_kabc_S, reduce
from .errors import GraphError, NetflowError
from .flows import Flow, kpf, netflow_of
from .formulas import bounds
from .volumes import volume_via_kpf


def _netflow(values: Sequence[int]) -> tuple[int, ...]:
    return (0, *values, -sum(values))


@lru_cache(maxsize=None)
def _graph(n: int, a: int, b: int, c: int) -> Multigraph:
    return build_kabc(n, a, b, c)


def morris_via_kpf(n: int, a: int, b: int, c: int) -> int:
    """K on k_{n+2}^{a,b,c} at net flow (0, a_1, ..., a_n, -sum), a_i = a-1+c(i-1)."""
    if n == 0:
        return 1
    return kpf(_graph(n, a, b, c), _netflow(bounds(n, a, c)))


def _lower_bounds(upper: list[int]) -> list[int]:
    """Smallest feasible net flow at each vertex: inflow into vertex i is
    at most what vertices before it can produce."""
    out, produced = [], 0
    for u in upper:
        out.append(-produced)
        produced += max(u, 0)
    return out


@lru_cache(maxsize=None)
def psi_via_kpf(n: int, k: int, a: int, b: int, c: int) -> int:
    """Sum of K over net flows a_i <= a-1+c(i-1), equality at exactly n-k indices."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    G = _graph(n, a, b, c)
    upper = bounds(n, a, c)
    lower = _lower_bounds(upper)
    total = 0
    for strict in combinations(range(n), k):
        ranges = [
            range(lower[i], upper[i]) if i in strict else (upper[i],) for i in range(n)
        ]
        for values in product(*ranges):
            total += kpf(G, _netflow(values))
    return total


def _kabc_S_volume(n: int, a: int, b: int, c: int, S) -> int:
    G = build_kabc_S(n, a, b, c, S)
    # an internal vertex with no in-edge pins its out-edges to 0: the
    # polytope is lower dimensional and contributes no volume
    if not G.has_unique_source_sink():
        return 0
    return volume_via_kpf(G)


@lru_cache(maxsize=None)
def psi_via_volumes(n: int, k: int, a: int, b: int, c: int) -> int:
    """Sum of vol F over the graphs k_{n+2}^{a,b,c}(S), |S| = k."""
    if k < 0 or k > n:
        return 0
    if a < 1:
        raise GraphError("psi_via_volumes needs a >= 1")
    return sum(_kabc_S_volume(n, a, b, c, S) for S in combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def phi_via_kpf(n: int, k: int, a: int, b: int, c: int) -> int:
    """Sum of K over a_i in {u_i - 1, u_i}, with u_i = a-1+c(i-1) at exactly n-k indices."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    G = _graph(n, a, b, c)
    upper = bounds(n, a, c)
    total = 0
    for lowered in combinations(range(n), k):
        values = [u - 1 if i in lowered else u for i, u in enumerate(upper)]
        total += kpf(G, _netflow(values))
    return total


def psi_netflows(n: int, k: int, a: int, c: int) -> list[tuple[int, ...]]:
    """The net flow vectors summed over by psi_via_kpf, in order."""
    upper = bounds(n, a, c)
    lower = _lower_bounds(upper)
    out = []
    for strict in combinations(range(n), k):
        ranges = [
            range(lower[i], upper[i]) if i in strict else (upper[i],) for i in range(n)
        ]
        out.extend(_netflow(v) for v in product(*ranges))
    return out


def subdivide_kabc(n: int, a: int, b: int, c: int) -> list[tuple[frozenset, Multigraph]]:
    """Split k_{n+2}^{a,b+1,c} into the 2^n graphs k_{n+2}^{a,b,c}(S).

    At each internal vertex i the reduction rule is applied once to the
    first (0,i) edge and the first (i,n+1) edge.  The child that drops the
    sink edge keeps a source edges at i; the child that drops the source
    edge puts i in S.
    """
    if a < 1:
        raise GraphError("subdivide_kabc needs a >= 1")
    sink = n + 1
    leaves: list[tuple[frozenset, Multigraph]] = [(frozenset(), build_kabc(n, a, b + 1, c))]
    for i in range(1, n + 1):
        nxt = []
        for S, G in leaves:
            e1 = next(e for e in G.in_edges(i) if G.edges[e][0] == 0)
            e2 = next(e for e in G.out_edges(i) if G.edges[e][1] == sink)
            keep, move = reduce(G, e1, e2)
            nxt.append((S, keep))
            nxt.append((S | {i}, move))
        leaves = nxt
    leaves.sort(key=lambda p: (len(p[0]), sorted(p[0])))
    return leaves


# contraction between k_{n+2}^{1,b,c} and k_{n+1}^{c+1,b,c}


def _copy_index(G: Multigraph) -> list[int]:
    seen: dict = {}
    out = []
    for e in G.edges:
        out.append(seen.get(e, 0))
        seen[e] = seen.get(e, 0) + 1
    return out


def _contraction_tables(n: int, b: int, c: int):
    src = _graph(n, 1, b, c)
    tgt = _graph(n - 1, c + 1, b, c)
    tgt_pos = {(e, idx): pos for pos, (e, idx) in enumerate(zip(tgt.edges, _copy_index(tgt)))}
    forward = {}
    for pos, (e, idx) in enumerate(zip(src.edges, _copy_index(src))):
        t, h = e
        if t >= 2:
            forward[pos] = tgt_pos[((t - 1, h - 1), idx)]
    return src, tgt, forward


def contract(n: int, b: int, c: int, f: Sequence[int]) -> Flow:
    """Flow on k_{n+2}^{1,b,c} with zero net flow at 0 and 1 to a flow on
    k_{n+1}^{c+1,b,c}.  Edges at vertices 0 and 1 carry no flow and are
    dropped; vertex i >= 2 becomes i-1."""
    if n < 2:
        raise GraphError("contraction needs n >= 2")
    src, tgt, forward = _contraction_tables(n, b, c)
    if len(f) != len(src.edges):
        raise NetflowError("flow length does not match k^{1,b,c}")
    net = netflow_of(src, f)
    if net[0] != 0 or net[1] != 0:
        raise NetflowError(f"net flow at vertices 0 and 1 must be 0, got {net[:2]}")
    g = [0] * len(tgt.edges)
    for pos, x in enumerate(f):
        if pos in forward:
            g[forward[pos]] = x
        elif x != 0:
            raise NetflowError(f"edge {src.edges[pos]} carries flow {x}; it must be 0")
    return tuple(g)


def uncontract(n: int, b: int, c: int, g: Sequence[int]) -> Flow:
    """Inverse of contract; target flows must vanish on source edges."""
    if n < 2:
        raise GraphError("contraction needs n >= 2")
    src, tgt, forward = _contraction_tables(n, b, c)
    if len(g) != len(tgt.edges):
        raise NetflowError("flow length does not match k^{c+1,b,c}")
    for pos, (t, _) in enumerate(tgt.edges):
        if t == 0 and g[pos] != 0:
            raise NetflowError("source edges of the contracted graph must carry 0")
    f = [0] * len(src.edges)
    for s, t in forward.items():
        f[s] = g[t]
    return tuple(f)
