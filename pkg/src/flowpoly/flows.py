"""Integer flows, Kostant partition functions, routes, and an Ehrhart
volume oracle.

Net flow at a vertex is outflow minus inflow.  A net flow vector has one
entry per vertex 0..n+1.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .digraph import Multigraph
from .errors import GraphError, InvariantViolation, NetflowError
from .exact import binomial, rank

Flow = tuple[int, ...]
Route = tuple[int, ...]


def _check_netflow(G: Multigraph, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != G.n + 2:
        raise NetflowError(f"net flow has length {len(a)}, expected {G.n + 2}")
    return a


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of total into parts, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def enumerate_flows(G: Multigraph, a: Sequence[int]) -> list[Flow]:
    """All nonnegative integer flows on G with net flow a, sorted."""
    a = _check_netflow(G, a)
    if sum(a) != 0:
        return []
    m = len(G.edges)
    out: list[Flow] = []
    flow = [0] * m
    inflow = [0] * (G.n + 2)

    def visit(v: int) -> None:
        if v == G.n + 1:
            if a[v] + inflow[v] == 0:
                out.append(tuple(flow))
            return
        supply = a[v] + inflow[v]
        if supply < 0:
            return
        outs = G.out_edges(v)
        if not outs:
            if supply == 0:
                visit(v + 1)
            return
        for comp in _compositions(supply, len(outs)):
            for eid, x in zip(outs, comp):
                flow[eid] = x
                inflow[G.edges[eid][1]] += x
            visit(v + 1)
            for eid, x in zip(outs, comp):
                flow[eid] = 0
                inflow[G.edges[eid][1]] -= x

    visit(0)
    out.sort()
    return out


def kpf(G: Multigraph, a: Sequence[int]) -> int:
    """Kostant partition function K_G(a), the number of integer flows.

    Counts without materializing flows: vertices are processed in order and
    the state is the inflow already committed to every later vertex.
    Parallel edges to one head are merged, x units over m copies giving
    C(x+m-1, m-1) choices.
    """
    a = _check_netflow(G, a)
    if sum(a) != 0:
        return 0
    last = G.n + 1
    heads = []
    for v in range(G.n + 2):
        mult: dict[int, int] = {}
        for eid in G.out_edges(v):
            h = G.edges[eid][1]
            mult[h] = mult.get(h, 0) + 1
        heads.append(tuple(sorted(mult.items())))

    @lru_cache(maxsize=None)
    def count(v: int, pending: tuple[int, ...]) -> int:
        # pending[i] is the inflow already sent to vertex v + i
        supply = a[v] + pending[0]
        if v == last:
            return 1 if supply == 0 else 0
        if supply < 0:
            return 0
        if not heads[v]:
            return count(v + 1, pending[1:]) if supply == 0 else 0
        total = 0
        rest = list(pending[1:])
        for split, weight in _weighted_splits(supply, heads[v]):
            for h, x in split:
                rest[h - v - 1] += x
            total += weight * count(v + 1, tuple(rest))
            for h, x in split:
                rest[h - v - 1] -= x
        return total

    return count(0, (0,) * (G.n + 2))


def _weighted_splits(supply: int, heads: tuple[tuple[int, int], ...]):
    """Distribute supply over distinct heads; weight counts the ways to
    spread each share across that head's parallel edges."""
    for comp in _compositions(supply, len(heads)):
        weight = 1
        for (_, m), x in zip(heads, comp):
            weight *= binomial(x + m - 1, m - 1)
        yield tuple((h, x) for (h, _), x in zip(heads, comp)), weight


def is_flow(G: Multigraph, f: Sequence[int], a: Sequence[int]) -> bool:
    """Check that f is a nonnegative integer flow on G with net flow a."""
    if len(f) != len(G.edges) or any(x < 0 for x in f):
        return False
    net = [0] * (G.n + 2)
    for (t, h), x in zip(G.edges, f):
        net[t] += x
        net[h] -= x
    return tuple(net) == tuple(a)


def netflow_of(G: Multigraph, f: Sequence[int]) -> tuple[int, ...]:
    net = [0] * (G.n + 2)
    for (t, h), x in zip(G.edges, f):
        net[t] += x
        net[h] -= x
    return tuple(net)


def routes(G: Multigraph) -> list[Route]:
    """All source-to-sink paths as EdgeId sequences, sorted."""
    out: list[Route] = []

    def walk(v: int, path: list[int]) -> None:
        if v == G.n + 1:
            out.append(tuple(path))
            return
        for eid in G.out_edges(v):
            path.append(eid)
            walk(G.edges[eid][1], path)
            path.pop()

    walk(0, [])
    out.sort()
    return out


def incidence_matrix(G: Multigraph) -> list[list[int]]:
    rows = [[0] * len(G.edges) for _ in range(G.n + 2)]
    for eid, (t, h) in enumerate(G.edges):
        rows[t][eid] += 1
        rows[h][eid] -= 1
    return rows


def flow_dimension(G: Multigraph) -> int:
    """|E| minus the rank of the vertex-edge incidence matrix."""
    return len(G.edges) - rank(incidence_matrix(G))


def ehrhart_volume(G: Multigraph, a: Sequence[int]) -> int:
    """Normalized volume of F_G(a) in dimension d = |E| - rank.

    Counts lattice points of the dilates t*a for t = 0..d+1 and takes the
    d-th finite difference, which is d! times the leading coefficient of
    the Ehrhart polynomial.  The (d+1)-th difference must vanish; if it
    does not, the dimension was miscounted.  A polytope of lower dimension
    than d has volume 0 here.
    """
    a = _check_netflow(G, a)
    if kpf(G, a) == 0:
        raise GraphError(f"flow polytope for net flow {list(a)} is empty")
    d = flow_dimension(G)
    counts = [kpf(G, tuple(t * x for x in a)) for t in range(d + 2)]
    diffs = counts
    for _ in range(d):
        diffs = [y - x for x, y in zip(diffs, diffs[1:])]
    # two entries remain: Delta^d at t=0 and t=1
    if diffs[0] != diffs[1]:
        raise InvariantViolation(
            f"lattice-point counts {counts} are not a polynomial of degree {d}"
        )
    if diffs[0] < 0:
        raise InvariantViolation(f"negative normalized volume {diffs[0]}")
    return diffs[0]
