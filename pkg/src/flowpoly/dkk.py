"""Framed graphs, coherent routes and the clique/flow correspondence.

A framing lists, for every internal vertex, its incoming and outgoing
EdgeIds from smallest to largest.  Maximal cliques of pairwise coherent
routes index the simplices of the framed triangulation of F_G; the map
omega sends each one to an integer flow with net flow (0, d_1, ..., -sum).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from .digraph import Multigraph, reverse
from .errors import GraphError, InvariantViolation
from .flows import Flow, Route, routes

Clique = tuple[Route, ...]


@dataclass(frozen=True)
class Framing:
    """Per-vertex orders; entries for vertices 0 and n+1 are empty."""

    ins: tuple[tuple[int, ...], ...]
    outs: tuple[tuple[int, ...], ...]

    def in_rank(self, v: int, eid: int) -> int:
        return self.ins[v].index(eid)

    def out_rank(self, v: int, eid: int) -> int:
        return self.outs[v].index(eid)

    def validate(self, G: Multigraph) -> None:
        if len(self.ins) != G.n + 2 or len(self.outs) != G.n + 2:
            raise GraphError("framing has the wrong number of vertices")
        for v in G.internal_vertices():
            if sorted(self.ins[v]) != sorted(G.in_edges(v)):
                raise GraphError(f"in-order at {v} is not a permutation of in({v})")
            if sorted(self.outs[v]) != sorted(G.out_edges(v)):
                raise GraphError(f"out-order at {v} is not a permutation of out({v})")

    def to_json(self) -> dict:
        return {"in": [list(x) for x in self.ins], "out": [list(x) for x in self.outs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Framing":
        try:
            return cls(tuple(tuple(x) for x in obj["in"]), tuple(tuple(x) for x in obj["out"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad framing JSON: {exc}") from exc


def default_framing(G: Multigraph) -> Framing:
    """Order edges by the opposite endpoint, ties by EdgeId."""
    ins, outs = [()], [()]
    for v in G.internal_vertices():
        ins.append(tuple(sorted(G.in_edges(v), key=lambda e: (G.edges[e][0], e))))
        outs.append(tuple(sorted(G.out_edges(v), key=lambda e: (G.edges[e][1], e))))
    ins.append(())
    outs.append(())
    return Framing(tuple(ins), tuple(outs))


def random_framing(G: Multigraph, rng: random.Random) -> Framing:
    ins, outs = [()], [()]
    for v in G.internal_vertices():
        i, o = list(G.in_edges(v)), list(G.out_edges(v))
        rng.shuffle(i)
        rng.shuffle(o)
        ins.append(tuple(i))
        outs.append(tuple(o))
    ins.append(())
    outs.append(())
    return Framing(tuple(ins), tuple(outs))


def _vertex_positions(G: Multigraph, R: Route) -> dict[int, int]:
    """Internal vertex -> index of the edge of R entering it."""
    return {G.edges[e][1]: pos for pos, e in enumerate(R[:-1])}


def _compare_in(G: Multigraph, fr: Framing, R: Route, pr: int, Q: Route, pq: int) -> int:
    """Compare prefixes ending with R[pr], Q[pq] (both entering one vertex).

    Walks back while the edges agree; at the first vertex j where they
    differ, the edges entering j are compared in in(j).  Returns -1, 0, 1.
    """
    while pr >= 0 and pq >= 0 and R[pr] == Q[pq]:
        pr -= 1
        pq -= 1
    if pr < 0 and pq < 0:
        return 0
    j = G.edges[R[pr]][1]
    ra, rb = fr.in_rank(j, R[pr]), fr.in_rank(j, Q[pq])
    return -1 if ra < rb else 1


def _compare_out(G: Multigraph, fr: Framing, R: Route, pr: int, Q: Route, pq: int) -> int:
    """Compare suffixes starting with R[pr], Q[pq] (both leaving one vertex)."""
    while pr < len(R) and pq < len(Q) and R[pr] == Q[pq]:
        pr += 1
        pq += 1
    if pr == len(R) and pq == len(Q):
        return 0
    j = G.edges[R[pr]][0]
    ra, rb = fr.out_rank(j, R[pr]), fr.out_rank(j, Q[pq])
    return -1 if ra < rb else 1


def coherent(G: Multigraph, R: Route, Q: Route, fr: Framing) -> bool:
    """True when R and Q are ordered alike on both sides of every shared
    internal vertex.  A side on which the two paths agree imposes nothing."""
    posR = _vertex_positions(G, R)
    posQ = _vertex_positions(G, Q)
    for v in posR.keys() & posQ.keys():
        pr, pq = posR[v], posQ[v]
        cin = _compare_in(G, fr, R, pr, Q, pq)
        if cin == 0:
            continue
        cout = _compare_out(G, fr, R, pr + 1, Q, pq + 1)
        if cout == 0:
            continue
        if cin != cout:
            return False
    return True


def coherence_graph(G: Multigraph, fr: Framing) -> tuple[list[Route], nx.Graph]:
    rs = routes(G)
    H = nx.Graph()
    H.add_nodes_from(range(len(rs)))
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if coherent(G, rs[i], rs[j], fr):
                H.add_edge(i, j)
    return rs, H


def max_cliques(G: Multigraph, fr: Optional[Framing] = None) -> list[Clique]:
    """All maximal sets of pairwise coherent routes, sorted."""
    G.require_unique_source_sink()
    fr = fr or default_framing(G)
    fr.validate(G)
    rs, H = coherence_graph(G, fr)
    out = [tuple(sorted(rs[i] for i in clique)) for clique in nx.find_cliques(H)]
    out.sort()
    return out


def omega(G: Multigraph, C: Sequence[Route]) -> Flow:
    """f(e) = n(e) - 1, with n(e) the number of distinct prefixes ending in e."""
    prefixes: set[tuple[int, ...]] = set()
    for R in C:
        for pos in range(len(R)):
            prefixes.add(tuple(R[: pos + 1]))
    counts = [0] * len(G.edges)
    for p in prefixes:
        counts[p[-1]] += 1
    missing = [e for e, x in enumerate(counts) if x == 0]
    if missing:
        raise InvariantViolation(f"edges {missing} lie on no route of the clique")
    return tuple(x - 1 for x in counts)


def omega_table(G: Multigraph, fr: Optional[Framing] = None) -> dict[Flow, Clique]:
    table: dict[Flow, Clique] = {}
    for C in max_cliques(G, fr):
        f = omega(G, C)
        if f in table:
            raise InvariantViolation(f"two maximal cliques map to flow {f}")
        table[f] = C
    return table


def omega_inverse(G: Multigraph, f: Sequence[int], fr: Optional[Framing] = None,
                  table: Optional[dict] = None) -> Clique:
    table = table if table is not None else omega_table(G, fr)
    try:
        return table[tuple(f)]
    except KeyError:
        raise InvariantViolation(f"flow {tuple(f)} is not the image of a maximal clique") from None


def reverse_framing(G: Multigraph, fr: Framing) -> Framing:
    """Framing on reverse(G): vertex i takes the swapped orders of n+1-i."""
    m = G.n + 1
    ins = tuple(fr.outs[m - v] for v in range(G.n + 2))
    outs = tuple(fr.ins[m - v] for v in range(G.n + 2))
    return Framing(ins, outs)


def reverse_route(R: Route) -> Route:
    return tuple(reversed(R))


def reverse_clique(C: Sequence[Route]) -> Clique:
    return tuple(sorted(reverse_route(R) for R in C))


def theta(G: Multigraph, f: Sequence[int], fr: Optional[Framing] = None,
          table: Optional[dict] = None) -> Flow:
    """Integer flow on G to integer flow on reverse(G)."""
    fr = fr or default_framing(G)
    C = omega_inverse(G, f, fr, table)
    return omega(reverse(G), reverse_clique(C))


def theta_bijection(G: Multigraph, fr: Optional[Framing] = None) -> list[tuple[Flow, Flow]]:
    """Pairs (f, theta(f)) for every integer flow f, sorted by f."""
    fr = fr or default_framing(G)
    table = omega_table(G, fr)
    return sorted((f, theta(G, f, fr, table)) for f in table)


def clique_to_tree(G: Multigraph, C: Sequence[Route], fr: Framing) -> list[tuple[int, int]]:
    """For G(p,q): edge (i, j) when C uses the i-th (0,1) edge and the j-th
    (1,2) edge in framing order (1-based).  Must be a spanning tree of K_{p,q}."""
    if G.n != 1:
        raise GraphError("clique_to_tree expects a graph G(p,q)")
    p, q = len(fr.ins[1]), len(fr.outs[1])
    tree = sorted((fr.in_rank(1, R[0]) + 1, fr.out_rank(1, R[1]) + 1) for R in C)
    T = nx.Graph()
    T.add_nodes_from([("L", i) for i in range(1, p + 1)] + [("R", j) for j in range(1, q + 1)])
    T.add_edges_from((("L", i), ("R", j)) for i, j in tree)
    if len(tree) != p + q - 1 or not nx.is_tree(T):
        raise InvariantViolation(f"clique {C} does not give a spanning tree")
    return tree


def tree_degrees(tree: Sequence[tuple[int, int]], p: int, q: int) -> tuple[list[int], list[int]]:
    left, right = [0] * p, [0] * q
    for i, j in tree:
        left[i - 1] += 1
        right[j - 1] += 1
    return left, right
