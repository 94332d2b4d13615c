"""Acyclic multigraphs on {0, ..., n+1} with edges oriented low -> high.

Edges are stored as an ordered tuple; an edge's position in that tuple is
its EdgeId, and parallel edges are repeated entries.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import GraphError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("n must be nonnegative")
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        for t, h in edges:
            if not 0 <= t < h <= self.n + 1:
                raise GraphError(f"edge ({t},{h}) is not a forward edge on 0..{self.n + 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def sink(self) -> int:
        return self.n + 1

    @property
    def num_vertices(self) -> int:
        return self.n + 2

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def _in_ids(self) -> tuple[tuple[int, ...], ...]:
        ins = [[] for _ in range(self.n + 2)]
        for eid, (_, h) in enumerate(self.edges):
            ins[h].append(eid)
        return tuple(tuple(x) for x in ins)

    @cached_property
    def _out_ids(self) -> tuple[tuple[int, ...], ...]:
        outs = [[] for _ in range(self.n + 2)]
        for eid, (t, _) in enumerate(self.edges):
            outs[t].append(eid)
        return tuple(tuple(x) for x in outs)

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in_ids[v]

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out_ids[v]

    def indeg(self, v: int) -> int:
        return len(self._in_ids[v])

    def outdeg(self, v: int) -> int:
        return len(self._out_ids[v])

    def internal_vertices(self) -> range:
        return range(1, self.n + 1)

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)

    def same_edges(self, other: "Multigraph") -> bool:
        """Equality up to reordering of the edge list."""
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def has_unique_source_sink(self) -> bool:
        if self.outdeg(0) == 0 or self.indeg(self.sink) == 0:
            return False
        return all(self.indeg(v) > 0 and self.outdeg(v) > 0 for v in self.internal_vertices())

    def require_unique_source_sink(self) -> None:
        if self.outdeg(0) == 0:
            raise GraphError("vertex 0 has no outgoing edges")
        if self.indeg(self.sink) == 0:
            raise GraphError(f"sink {self.sink} has no incoming edges")
        for v in self.internal_vertices():
            if self.indeg(v) == 0:
                raise GraphError(f"internal vertex {v} is an extra source")
            if self.outdeg(v) == 0:
                raise GraphError(f"internal vertex {v} is an extra sink")

    def indegree_netflow(self) -> tuple[int, ...]:
        """(0, d_1, ..., d_n, -sum d_i) with d_i = indeg(i) - 1."""
        d = [self.indeg(v) - 1 for v in self.internal_vertices()]
        return (0, *d, -sum(d))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "Multigraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"bad graph JSON: {exc}") from exc


def _check_params(n: int, a: int, b: int, c: int) -> None:
    if n < 1:
        raise GraphError("k_{n+2}^{a,b,c} requires n >= 1")
    if a < 0 or b < 0 or c < 0:
        raise GraphError("multiplicities a, b, c must be nonnegative")


def _sorted_graph(n: int, mult: dict[Edge, int]) -> Multigraph:
    edges = []
    for e in sorted(mult):
        edges.extend([e] * mult[e])
    return Multigraph(n, tuple(edges))


def _kabc_multiplicities(n: int, a: int, b: int, c: int) -> dict[Edge, int]:
    mult: dict[Edge, int] = {}
    for i in range(1, n + 1):
        mult[(0, i)] = a
        mult[(i, n + 1)] = b
    for i, j in combinations(range(1, n + 1), 2):
        mult[(i, j)] = c
    return {e: m for e, m in mult.items() if m > 0}


def build_kabc(n: int, a: int, b: int, c: int) -> Multigraph:
    """The graph k_{n+2}^{a,b,c}, without any (0, n+1) edge.

    Edge list is sorted lexicographically, parallel copies adjacent.
    Zero multiplicities are accepted (they arise in the recurrences).
    """
    _check_params(n, a, b, c)
    return _sorted_graph(n, _kabc_multiplicities(n, a, b, c))


def build_kabc_S(n: int, a: int, b: int, c: int, S: Iterable[int]) -> Multigraph:
    """k_{n+2}^{a,b,c}(S): add n copies of (0,n+1); for i in S move one
    source edge (0,i) to a sink edge (i,n+1)."""
    _check_params(n, a, b, c)
    S = frozenset(S)
    if not S <= set(range(1, n + 1)):
        raise GraphError(f"S={sorted(S)} is not a subset of [1,{n}]")
    if S and a < 1:
        raise GraphError("build_kabc_S needs a >= 1 to delete a source edge")
    mult = {e: m for e, m in _kabc_multiplicities(n, a, b, c).items()}
    for i in S:
        mult[(0, i)] = mult.get((0, i), 0) - 1
        mult[(i, n + 1)] = mult.get((i, n + 1), 0) + 1
    mult[(0, n + 1)] = n
    return _sorted_graph(n, {e: m for e, m in mult.items() if m > 0})


def build_complete(n: int) -> Multigraph:
    """The complete graph k_{n+2}, including the edge (0, n+1)."""
    if n < 0:
        raise GraphError("n must be nonnegative")
    return Multigraph(n, tuple(combinations(range(n + 2), 2)))


def build_Gpq(p: int, q: int) -> Multigraph:
    """Vertices {0,1,2}; p copies of (0,1) then q copies of (1,2)."""
    if p < 1 or q < 1:
        raise GraphError("G(p,q) requires p, q >= 1")
    return Multigraph(1, ((0, 1),) * p + ((1, 2),) * q)


def build_path(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n + 1)))


def reverse(G: Multigraph) -> Multigraph:
    """Reverse edges and relabel i -> n+1-i; edge k stays edge k."""
    m = G.n + 1
    return Multigraph(G.n, tuple((m - h, m - t) for t, h in G.edges))


def reduce(G: Multigraph, e1: int, e2: int) -> tuple[Multigraph, Multigraph]:
    """Apply the reduction rule to e1 = (i,j), e2 = (j,k).

    G1 replaces e2 by (i,k) in place, G2 replaces e1 by (i,k) in place, so
    every other EdgeId keeps its meaning in both children.
    """
    try:
        i, j = G.edges[e1]
        j2, k = G.edges[e2]
    except IndexError as exc:
        raise GraphError(f"edge id out of range: {exc}") from exc
    if j != j2:
        raise GraphError(f"edges {e1}={G.edges[e1]} and {e2}={G.edges[e2]} do not meet head-to-tail")
    edges1 = list(G.edges)
    edges1[e2] = (i, k)
    edges2 = list(G.edges)
    edges2[e1] = (i, k)
    return Multigraph(G.n, tuple(edges1)), Multigraph(G.n, tuple(edges2))


def _eligible(G: Multigraph) -> tuple[list[int], list[int]]:
    both, single = [], []
    for v in G.internal_vertices():
        if G.outdeg(v) > 1:
            if G.indeg(v) > 1:
                both.append(v)
            elif G.indeg(v) == 1:
                single.append(v)
    return both, single


def reduction_leaves(G: Multigraph, rng: Optional[random.Random] = None) -> list[Multigraph]:
    """Leaves of the reduction tree built by the outdegree-1 algorithm.

    At a vertex with indeg > 1 and outdeg > 1 both children are kept. At a
    vertex with indeg 1 and outdeg > 1 only the child that keeps the unique
    incoming edge survives; the other child leaves the vertex without
    inflow, so its flow polytope is degenerate.  Recursion stops once
    every internal vertex has outdegree 1.

    Without ``rng`` the smallest vertex with indeg > 1 is reduced first,
    then the smallest with indeg 1, always on the lexicographically
    smallest (in-edge, out-edge) pair.  With ``rng`` the vertex and pair
    are drawn at random (used to check order independence).
    """
    G.require_unique_source_sink()
    leaves = []
    stack = [G]
    while stack:
        H = stack.pop()
        both, single = _eligible(H)
        if not both and not single:
            leaves.append(H)
            continue
        if rng is None:
            v = both[0] if both else single[0]
            e1, e2 = H.in_edges(v)[0], H.out_edges(v)[0]
        else:
            v = rng.choice(both + single)
            e1, e2 = rng.choice(H.in_edges(v)), rng.choice(H.out_edges(v))
        g1, g2 = reduce(H, e1, e2)
        if H.indeg(v) > 1:
            stack.append(g2)
        stack.append(g1)
    return leaves


def random_multigraph(rng: random.Random, max_edges: int = 9, max_n: int = 3) -> Multigraph:
    """Random graph with unique source 0 and unique sink n+1."""
    n = rng.randint(1, max_n)
    edges = []
    for v in range(1, n + 1):
        edges.append((rng.randrange(0, v), v))
        edges.append((v, rng.randrange(v + 1, n + 2)))
    budget = max(max_edges, len(edges))
    extra = rng.randint(0, budget - len(edges))
    for _ in range(extra):
        t = rng.randrange(0, n + 1)
        h = rng.randrange(t + 1, n + 2)
        edges.append((t, h))
    rng.shuffle(edges)
    return Multigraph(n, tuple(edges))
