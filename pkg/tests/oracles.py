"""Slow, independent reference implementations used to check the package."""

from __future__ import annotations

import itertools

import networkx as nx
from hypothesis import strategies as st

from copbound.graphcore import Graph


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph(G.number_of_nodes(), G.edges())


def brute_has_minor(h: Graph, g: Graph) -> bool:
    """Try every labelling of host vertices with a pattern vertex or 'unused'."""
    k = h.n
    if k == 0:
        return True
    if k > g.n:
        return False
    for labels in itertools.product(range(-1, k), repeat=g.n):
        sets = [[x for x in range(g.n) if labels[x] == v] for v in range(k)]
        if any(not s for s in sets):
            continue
        if not all(nx.is_connected(to_nx(g).subgraph(s)) for s in sets):
            continue
        if all(any(labels[y] == b for x in sets[a] for y in g.neighbors(x)) for a, b in h.edges):
            return True
    return False


def is_outerplanar(g: Graph) -> bool:
    G = to_nx(g)
    G.add_edges_from((g.n, v) for v in range(g.n))
    return nx.check_planarity(G)[0]


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(to_nx(g))[0]


def series_parallel(g: Graph) -> bool:
    """K4-minor-free test by series-parallel reduction on a multigraph."""
    adj = {v: {} for v in range(g.n)}
    for a, b in g.edges:
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            nbrs = adj[v]
            for w in nbrs:
                nbrs[w] = 1
                adj[w][v] = 1
            if len(nbrs) <= 1:
                for w in nbrs:
                    del adj[w][v]
                del adj[v]
                changed = True
            elif len(nbrs) == 2:
                a, b = nbrs
                del adj[a][v]
                del adj[b][v]
                adj[a][b] = 1
                adj[b][a] = 1
                del adj[v]
                changed = True
    return not adj


def naive_cops_win(g: Graph, k: int) -> bool:
    """Set-based retrograde analysis with cops stored as ordered tuples."""
    V = range(g.n)
    closed = [g.closed_neighborhood(v) for v in V]
    cops = list(itertools.product(V, repeat=k))
    won = {(c, r, t) for c in cops for r in V for t in (0, 1) if r in c}
    changed = True
    while changed:
        changed = False
        for c in cops:
            moves = list(itertools.product(*(closed[x] for x in c)))
            for r in V:
                if (c, r, 0) not in won and any((m, r, 1) in won for m in moves):
                    won.add((c, r, 0))
                    changed = True
                if (c, r, 1) not in won and all((c, y, 0) in won for y in closed[r]):
                    won.add((c, r, 1))
                    changed = True
    return any(all((c, r, 0) in won for r in V) for c in cops)


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    if p is None:
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        mask = [draw(st.floats(0, 1)) < p for _ in pairs]
    edges = [e for e, keep in zip(pairs, mask) if keep]
    if connected:
        # chain any components together deterministically
        g = Graph(n, edges)
        from copbound.graphcore import components

        comps = components(g)
        edges += [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
    return Graph(n, edges)
