"""Immutable simple graphs, graph6 I/O, structural operations and generators
for the graph families used throughout the package.

Vertices are always the dense ids ``0..n-1``.  Operations that relabel
vertices return the ``old -> new`` map alongside the new graph.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INF = float("inf")


class Graph6Error(ValueError):
    """Malformed graph6 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_adj", "_adjset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add(_norm(u, v))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = frozenset(es)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._adjset = tuple(frozenset(a) for a in adj)

    # basic queries -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adjset[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adjset[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def boundary(self, s: Iterable[int]) -> frozenset[int]:
        """Coboundary N(S): vertices outside S adjacent to S."""
        s = set(s)
        out = set()
        for v in s:
            out.update(self._adjset[v])
        return frozenset(out - s)

    def induced(self, vs: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        keep = sorted(set(vs))
        mp = {v: i for i, v in enumerate(keep)}
        es = [(mp[u], mp[v]) for u, v in self.edges if u in mp and v in mp]
        return Graph(len(keep), es), mp

    def is_connected(self) -> bool:
        return self.n <= 1 or len(distances(self, 0)) == self.n

    # dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ----------------------------------------------------------------------
# paths and rooted cycles


@dataclass(frozen=True)
class PathOrCycle:
    """A path, or a cycle with a designated root.

    A rooted cycle stores its vertices with the root repeated at both ends,
    e.g. ``(r, a, b, r)``.
    """

    vertices: tuple[int, ...]
    kind: str = "path"
    root: int | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.kind not in ("path", "cycle"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "cycle":
            vs = self.vertices
            if len(vs) < 4 or vs[0] != vs[-1]:
                raise ValueError("a rooted cycle needs first == last and length >= 3")
            if self.root is None:
                object.__setattr__(self, "root", vs[0])
            elif self.root != vs[0]:
                raise ValueError("root must be the first and last vertex")
        elif self.root is not None:
            raise ValueError("only cycles carry a root")

    @classmethod
    def cycle(cls, vertices: Sequence[int]) -> "PathOrCycle":
        """Rooted cycle from an open vertex sequence; the first vertex is the root."""
        vs = tuple(vertices)
        return cls(vs + (vs[0],), "cycle", vs[0])

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"

    @property
    def length(self) -> int:
        return max(len(self.vertices) - 1, 0)

    @property
    def ends(self) -> frozenset[int]:
        if not self.vertices:
            return frozenset()
        return frozenset((self.vertices[0], self.vertices[-1]))

    @property
    def end_pair(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edge_list(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [_norm(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def key(self) -> tuple:
        """Orientation-independent identity, used to detect duplicates."""
        vs = self.vertices
        return (self.kind, min(vs, vs[::-1]))

    def check(self, g: Graph, exclude: Iterable[int] = ()) -> list[str]:
        """Problems with this sequence as a path/rooted cycle of ``g - exclude``."""
        bad = set(exclude)
        vs = self.vertices
        errs = []
        if not vs:
            return ["empty vertex sequence"]
        for v in vs:
            if not 0 <= v < g.n:
                errs.append(f"vertex {v} not in graph")
            elif v in bad:
                errs.append(f"vertex {v} is excluded")
        if errs:
            return errs
        body = vs[:-1] if self.is_cycle else vs
        if len(set(body)) != len(body):
            errs.append("repeated vertex")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                errs.append(f"{a}-{b} is not an edge")
        return errs

    def to_json(self) -> dict:
        d = {"vertices": list(self.vertices), "kind": self.kind}
        if self.is_cycle:
            d["root"] = self.root
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PathOrCycle":
        return cls(tuple(d["vertices"]), d.get("kind", "path"), d.get("root"))


# ----------------------------------------------------------------------
# graph6


def _n_bytes(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]


def write_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no header, no trailing newline)."""
    out = _n_bytes(g.n)
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode a single graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    if not s:
        raise Graph6Error("empty graph6 string", base)
    data = [ord(c) for c in s]
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid character {chr(c)!r}", base + i)
    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte vertex count", base + len(data))
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte vertex count", base + len(data))
        n = 0
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} adjacency bytes for n={n}, got {len(body)}",
            base + pos + min(len(body), need),
        )
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits", base + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def read_graph6_file(path) -> list[Graph]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(parse_graph6(line))
    return out


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")


# ----------------------------------------------------------------------
# queries


def distances(g: Graph, src: int) -> dict[int, int]:
    """BFS hop counts from ``src``; unreachable vertices are absent."""
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        dx = dist[x] + 1
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dx
                q.append(y)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    return distances(g, u).get(v, INF)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = sorted(distances(g, s))
        for v in comp:
            seen[v] = True
        out.append(comp)
    return out


def components_within(g: Graph, vs: Iterable[int]) -> list[list[int]]:
    """Components of the induced subgraph ``g[vs]``, in original ids."""
    allowed = set(vs)
    seen = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if y in allowed and y not in comp:
                    comp.add(y)
                    q.append(y)
        seen |= comp
        out.append(sorted(comp))
    return out


def is_connected_set(g: Graph, vs: Iterable[int]) -> bool:
    vs = set(vs)
    return bool(vs) and len(components_within(g, vs)) == 1


def is_isomorphic(a: Graph, b: Graph) -> bool:
    """Brute-force isomorphism test (intended for n <= 10)."""
    if a.n != b.n or a.m != b.m or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    n = a.n
    order = sorted(range(n), key=lambda v: -a.degree(v))
    img = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or b.degree(w) != a.degree(v):
                continue
            if all(a.has_edge(v, order[j]) == b.has_edge(w, img[order[j]]) for j in range(i)):
                img[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


# ----------------------------------------------------------------------
# constructions


def add_universal(g: Graph) -> Graph:
    """U(g): ``g`` plus a new vertex ``g.n`` adjacent to every vertex."""
    return Graph(g.n + 1, list(g.edges) + [(v, g.n) for v in range(g.n)])


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    """Disjoint union; the i-th graph's vertices are shifted by the sizes of the earlier ones."""
    edges = []
    off = 0
    for g in gs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, edges)


def contract_edge(g: Graph, e: tuple[int, int]) -> tuple[Graph, dict[int, int]]:
    """Contract ``e``; the merged vertex keeps the smaller id, later ids shift down."""
    u, v = _norm(*e)
    if (u, v) not in g.edges:
        raise ValueError(f"{e} is not an edge")
    mp = {}
    for x in range(g.n):
        if x == v:
            mp[x] = u
        else:
            mp[x] = x - (1 if x > v else 0)
    edges = set()
    for a, b in g.edges:
        a2, b2 = mp[a], mp[b]
        if a2 != b2:
            edges.add(_norm(a2, b2))
    return Graph(g.n - 1, edges), mp


def delete(g: Graph, vs: Iterable[int] = (), es: Iterable[tuple[int, int]] = ()) -> tuple[Graph, dict[int, int]]:
    """Delete vertices ``vs`` and edges ``es``; returns the graph and the old->new map."""
    vs = set(vs)
    es = {_norm(*e) for e in es}
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    for e in es:
        if e not in g.edges:
            raise ValueError(f"unknown edge {e}")
    keep = [x for x in range(g.n) if x not in vs]
    mp = {x: i for i, x in enumerate(keep)}
    edges = [(mp[a], mp[b]) for a, b in g.edges if a in mp and b in mp and (a, b) not in es]
    return Graph(len(keep), edges), mp


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph(g.n, [(perm[a], perm[b]) for a, b in g.edges])


# ----------------------------------------------------------------------
# families


def complete(t: int) -> Graph:
    if t < 1:
        raise ValueError("complete graph needs t >= 1")
    return Graph(t, itertools.combinations(range(t), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    if s < 1 or t < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def empty(n: int) -> Graph:
    return Graph(n)


def wheel(t: int) -> Graph:
    """W_t = U(C_t); the hub is vertex ``t``."""
    return add_universal(cycle(t))


# Edge lists transcribed from the standard drawings of the Petersen family.
# Vertex 0 is the top vertex in each drawing.
_PETERSEN_FAMILY = {
    1: (10, [(0, 7), (0, 8), (0, 9), (1, 7), (7, 4), (1, 5), (1, 6), (2, 4), (2, 8),
             (8, 5), (2, 6), (3, 4), (3, 5), (3, 9), (9, 6)]),
    2: (9, [(0, 7), (0, 2), (0, 5), (0, 8), (1, 7), (4, 7), (1, 5), (1, 6), (2, 4),
            (2, 5), (2, 6), (3, 4), (3, 5), (3, 8), (6, 8)]),
    3: (8, [(0, 1), (0, 7), (0, 3), (0, 4), (0, 6), (1, 4), (1, 5), (1, 6), (2, 4),
            (2, 7), (5, 7), (2, 6), (3, 4), (3, 5), (3, 6)]),
    4: (7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 4), (1, 5), (1, 6),
            (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]),
    5: (7, [(0, 1), (0, 3), (0, 4), (0, 5), (0, 6), (1, 4), (1, 5), (1, 6), (2, 4),
            (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (1, 3)]),
    6: (8, [(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5),
            (2, 6), (3, 4), (3, 5), (3, 6), (7, 1), (7, 2)]),
    7: (6, [(1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (2, 1), (3, 1), (4, 1), (5, 1),
            (3, 2), (4, 2), (5, 2), (4, 3), (5, 3), (5, 4)]),
}


def petersen_family(i: int) -> Graph:
    if i not in _PETERSEN_FAMILY:
        raise ValueError("Petersen family index must be in 1..7")
    n, es = _PETERSEN_FAMILY[i]
    return Graph(n, es)


def petersen() -> Graph:
    return petersen_family(1)


def ht(t: int) -> Graph:
    """H_t: ``t`` internally disjoint paths of length 4 between vertices 0 and 1."""
    if t < 1:
        raise ValueError("H_t needs t >= 1")
    edges = []
    nxt = 2
    for _ in range(t):
        a, b, c = nxt, nxt + 1, nxt + 2
        nxt += 3
        edges += [(0, a), (a, b), (b, c), (c, 1)]
    return Graph(nxt, edges)


def k2t_supergraph(t: int) -> Graph:
    """U(U(((t-1)/2) K_2 + K_1)) for odd ``t``."""
    if t < 1 or t % 2 == 0:
        raise ValueError("t must be odd and positive")
    inner = disjoint_union([complete(2)] * ((t - 1) // 2) + [complete(1)])
    return add_universal(add_universal(inner))


def lcf(n: int, shifts: Sequence[int], repeats: int) -> Graph:
    """Hamiltonian graph from LCF notation."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    seq = list(shifts) * repeats
    for i, s in enumerate(seq):
        edges.append((i, (i + s) % n))
    return Graph(n, edges)


def dodecahedron() -> Graph:
    return lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2)


_FAMILY_PATTERNS = [
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^K(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"^C(\d+)$"), lambda m: cycle(int(m[1]))),
    (re.compile(r"^P(\d+)$"), lambda m: path(int(m[1]))),
    (re.compile(r"^W(\d+)$"), lambda m: wheel(int(m[1]))),
    (re.compile(r"^E(\d+)$"), lambda m: empty(int(m[1]))),
    (re.compile(r"^P_fam:(\d+)$"), lambda m: petersen_family(int(m[1]))),
    (re.compile(r"^Ht:(\d+)$"), lambda m: ht(int(m[1]))),
    (re.compile(r"^K2t\+:(\d+)$"), lambda m: k2t_supergraph(int(m[1]))),
    (re.compile(r"^dodecahedron$"), lambda m: dodecahedron()),
    (re.compile(r"^petersen$"), lambda m: petersen()),
]


def generate(spec: str) -> Graph:
    """Build a named graph from a family spec such as ``"K5"``, ``"K3,4"``,
    ``"W6"``, ``"P_fam:3"``, ``"Ht:4"``, ``"dodecahedron"`` or ``"U(<spec>)"``."""
    spec = spec.strip().replace(" ", "")
    if spec.startswith("U(") and spec.endswith(")"):
        return add_universal(generate(spec[2:-1]))
    for pat, build in _FAMILY_PATTERNS:
        m = pat.match(spec)
        if m:
            return build(m)
    raise ValueError(f"unknown family spec {spec!r}")
