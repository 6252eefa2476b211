"""Exact minor containment for small graphs.

The search relies on one observation: if ``G`` is connected and contains an
``H`` minor, the branch sets can be grown until they partition ``V(G)``
(every unused vertex is absorbed into an adjacent branch set).  So it suffices
to enumerate partitions of ``V(G)`` into ``|V(H)|`` connected parts and test
whether ``H`` is a spanning subgraph of the quotient.  Before searching, the
host is shrunk by reductions that are exact given the minimum degree of ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .graphcore import Graph, components_within, is_connected_set

DEFAULT_BUDGET = 10**7
DEFAULT_CAP = 12


class MinorSearchRefused(RuntimeError):
    """The exact search could not be completed within the configured limits."""


@dataclass
class MinorModel:
    branch_sets: dict[int, frozenset[int]]

    def to_json(self) -> dict:
        return {str(k): sorted(v) for k, v in sorted(self.branch_sets.items())}

    @classmethod
    def from_json(cls, d: dict) -> "MinorModel":
        return cls({int(k): frozenset(v) for k, v in d.items()})


@dataclass
class MinorResult:
    status: str  # "found" | "not-found" | "budget-exhausted"
    model: MinorModel | None = None
    nodes_expanded: int = 0
    certificate: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        d = {"result": self.status, "nodes_expanded": self.nodes_expanded,
             "certificate": self.certificate}
        if self.model is not None:
            d["model"] = self.model.to_json()
        return d


def verify_model(h: Graph, g: Graph, m: MinorModel) -> bool:
    """Independent check that ``m`` witnesses ``h`` as a minor of ``g``."""
    bs = m.branch_sets
    if set(bs) != set(range(h.n)):
        return False
    seen: set[int] = set()
    for v in range(h.n):
        b = bs[v]
        if not b or any(not 0 <= x < g.n for x in b):
            return False
        if seen & b:
            return False
        seen |= b
        if not is_connected_set(g, b):
            return False
    for u, v in h.edges:
        bv = bs[v]
        if not any(g.neighbor_set(x) & bv for x in bs[u]):
            return False
    return True


def _to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_to_nx(g))[0]


# ----------------------------------------------------------------------
# host reduction


def _reduce(h: Graph, g: Graph) -> tuple[dict[int, set[int]], dict[int, set[int]]]:
    """Shrink ``g`` without changing whether it has an ``h`` minor.

    Returns adjacency of the reduced graph and, for each surviving vertex, the
    set of original vertices merged into it.
    """
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    merged = {v: {v} for v in range(g.n)}
    mindeg = min(h.degrees()) if h.n else 0
    if mindeg == 0:
        return adj, merged
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            d = len(adj[v])
            if d == 0 or (d == 1 and mindeg >= 2):
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                del merged[v]
                changed = True
            elif d == 2 and mindeg >= 3:
                a = min(adj[v])
                b = max(adj[v])
                # merge v into a
                adj[a].discard(v)
                adj[b].discard(v)
                if a != b:
                    adj[a].add(b)
                    adj[b].add(a)
                merged[a] |= merged[v]
                del adj[v]
                del merged[v]
                changed = True
    return adj, merged


# ----------------------------------------------------------------------
# quotient containment


def _embed_spanning(h: Graph, qadj: list[set[int]]) -> list[int] | None:
    """Bijection phi with every h-edge mapped onto a quotient edge, or None."""
    k = h.n
    order = sorted(range(k), key=lambda v: (-h.degree(v), v))
    qdeg = [len(a) for a in qadj]
    img = [-1] * k
    used = [False] * k

    def extend(i):
        if i == k:
            return True
        v = order[i]
        dv = h.degree(v)
        for w in range(k):
            if used[w] or qdeg[w] < dv:
                continue
            ok = True
            for u in h.neighbors(v):
                if img[u] >= 0 and img[u] not in qadj[w]:
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
                img[v] = -1
        return False

    return img if extend(0) else None


class _Budget(Exception):
    pass


class _PartitionSearch:
    """Enumerate partitions of ``verts`` into ``k`` connected parts."""

    def __init__(self, h: Graph, adj: dict[int, set[int]], verts: list[int], budget: int, nodes: int):
        self.h = h
        self.k = h.n
        self.adj = adj
        self.verts = verts
        self.budget = budget
        self.nodes = nodes
        self.label: dict[int, int] = {}
        self.parts: list[list[int]] = []
        self.cache: dict[frozenset, list[int] | None] = {}
        self.need_edges = h.m
        hdeg = sorted(h.degrees(), reverse=True)
        self.hdeg = hdeg

    def run(self):
        return self._step(0)

    def _connectable(self, p: int) -> bool:
        members = self.parts[p]
        if len(members) <= 1:
            return True
        label = self.label
        start = members[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y in seen:
                    continue
                ly = label.get(y)
                if ly is None or ly == p:
                    seen.add(y)
                    stack.append(y)
        return all(x in seen for x in members)

    def _leaf(self):
        k = self.k
        qadj = [set() for _ in range(k)]
        label = self.label
        for x in self.verts:
            lx = label[x]
            for y in self.adj[x]:
                ly = label[y]
                if ly != lx:
                    qadj[lx].add(ly)
        qm = sum(len(a) for a in qadj) // 2
        if qm < self.need_edges:
            return None
        qdeg = sorted((len(a) for a in qadj), reverse=True)
        if any(a < b for a, b in zip(qdeg, self.hdeg)):
            return None
        key = frozenset((a, b) for a in range(k) for b in qadj[a] if a < b)
        if key in self.cache:
            img = self.cache[key]
        else:
            img = _embed_spanning(self.h, qadj)
            self.cache[key] = img
        return img

    def _step(self, i: int):
        verts = self.verts
        if i == len(verts):
            if len(self.parts) != self.k:
                return None
            img = self._leaf()
            if img is None:
                return None
            return img, [list(p) for p in self.parts]
        remaining = len(verts) - i
        if len(self.parts) + remaining < self.k:
            return None
        x = verts[i]
        top = min(len(self.parts), self.k - 1)
        for p in range(top + 1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            if p == len(self.parts):
                self.parts.append([])
            self.parts[p].append(x)
            self.label[x] = p
            ok = True
            touched = {p}
            for y in self.adj[x]:
                ly = self.label.get(y)
                if ly is not None:
                    touched.add(ly)
            for q in touched:
                if not self._connectable(q):
                    ok = False
                    break
            if ok:
                res = self._step(i + 1)
                if res is not None:
                    return res
            del self.label[x]
            self.parts[p].pop()
            if not self.parts[p]:
                self.parts.pop()
        return None


def _bfs_order(adj: dict[int, set[int]], verts: list[int]) -> list[int]:
    vs = set(verts)
    order = []
    seen = set()
    for s in sorted(vs, key=lambda v: (-len(adj[v]), v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(adj[x]):
                if y in vs and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _prepare(h: Graph, g: Graph):
    """Cheap exact certificates, then the reduced host.

    Returns ``(result, None)`` when decided without search, else
    ``(None, (adj, merged))``.
    """
    if h.n == 0:
        return MinorResult("found", MinorModel({}), 0, "empty-pattern"), None
    if h.n > g.n or h.m > g.m:
        return MinorResult("not-found", None, 0, "counting"), None
    if h.n >= 5 and g.n >= 5 and not is_planar(h) and is_planar(g):
        return MinorResult("not-found", None, 0, "planar-host"), None
    adj, merged = _reduce(h, g)
    m = sum(len(a) for a in adj.values()) // 2
    if h.n > len(adj) or h.m > m:
        return MinorResult("not-found", None, 0, "reduction"), None
    return None, (adj, merged)


def _component_groups(h: Graph, adj: dict[int, set[int]]):
    verts = sorted(adj)
    tmp = Graph(max(verts) + 1 if verts else 0,
                [(a, b) for a in adj for b in adj[a] if a < b])
    comps = [c for c in components_within(tmp, verts)]
    hcomps = components_within(h, range(h.n))
    if len(hcomps) == 1:
        for c in comps:
            if len(c) >= h.n:
                yield c
        return
    # disconnected pattern: any nonempty set of host components may be used
    from itertools import combinations

    for r in range(1, len(comps) + 1):
        for combo in combinations(range(len(comps)), r):
            vs = sorted(v for i in combo for v in comps[i])
            if len(vs) >= h.n and r <= len(hcomps):
                yield vs


def find_minor_model(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> MinorResult:
    """Search for a model of ``h`` in ``g``.

    ``not-found`` is only reported after the search space is exhausted; running
    out of budget is reported as ``budget-exhausted``.
    """
    decided, prep = _prepare(h, g)
    if decided is not None:
        return decided
    adj, merged = prep
    nodes = 0
    for verts in _component_groups(h, adj):
        order = _bfs_order(adj, verts)
        search = _PartitionSearch(h, adj, order, budget, nodes)
        try:
            res = search.run()
        except _Budget:
            return MinorResult("budget-exhausted", None, search.nodes, "")
        nodes = search.nodes
        if res is not None:
            img, parts = res
            bs = {}
            for hv in range(h.n):
                part = parts[img[hv]]
                bs[hv] = frozenset(x for r in part for x in merged[r])
            model = MinorModel(bs)
            return MinorResult("found", model, nodes, "witness")
    return MinorResult("not-found", None, nodes, "search-exhausted")


def search_size(h: Graph, g: Graph) -> int:
    """Number of host vertices the exhaustive search would run on (0 if decided early)."""
    decided, prep = _prepare(h, g)
    return 0 if decided is not None else len(prep[0])


def is_minor_free(h: Graph, g: Graph, cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``h`` is not a minor of ``g``; refuses rather than guesses."""
    return not contains_minor(h, g, cap=cap, budget=budget).found


def contains_minor(h: Graph, g: Graph, cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET) -> MinorResult:
    size = search_size(h, g)
    if size > cap:
        raise MinorSearchRefused(f"reduced host has {size} vertices, above the cap of {cap}")
    res = find_minor_model(h, g, budget=budget)
    if res.status == "budget-exhausted":
        raise MinorSearchRefused(f"search budget of {budget} nodes exhausted")
    return res
