"""Decompositions (h, W, P, M, f) of a forbidden graph H and the cop-number
upper bound they certify for connected H-minor-free graphs.

For a decomposition, every non-matching path P gets the load
``max(|E(P)| - 1 + |f^-1(P)|, 1)`` (matching paths get 0) and the bound is
``[some load not in {0,1,2,4}] + sum(ceil(load / 3))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

from .graphcore import Graph, PathOrCycle
from .minor import DEFAULT_BUDGET, MinorModel, find_minor_model

CHEAP_LOADS = frozenset((0, 1, 2, 4))


class DecompositionError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class InfeasibleError(ValueError):
    """No vertex h gives a decomposition of H."""


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str

    def __str__(self):
        return f"({self.clause}) {self.message}"


@dataclass
class Decomposition:
    h: int
    W: frozenset[int]
    paths: tuple[PathOrCycle, ...]
    M: frozenset[int] = frozenset()
    f: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.W = frozenset(self.W)
        self.paths = tuple(self.paths)
        self.M = frozenset(self.M)
        self.f = dict(self.f)

    def preimage_counts(self) -> list[int]:
        c = [0] * len(self.paths)
        for p in self.f.values():
            if 0 <= p < len(c):
                c[p] += 1
        return c

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "W": sorted(self.W),
            "paths": [p.to_json() for p in self.paths],
            "M": sorted(self.M),
            "f": {str(w): i for w, i in sorted(self.f.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "Decomposition":
        return cls(
            d["h"],
            frozenset(d["W"]),
            tuple(PathOrCycle.from_json(p) for p in d["paths"]),
            frozenset(d.get("M", ())),
            {int(w): i for w, i in d.get("f", {}).items()},
        )


@dataclass
class BoundReport:
    ell: dict[int, int]
    indicator: int
    bound: int
    decomposition: Decomposition
    partial: bool = False
    minor_witness: MinorModel | None = None

    def to_json(self) -> dict:
        d = self.decomposition.to_json()
        d["ell"] = {str(i): v for i, v in sorted(self.ell.items())}
        d["indicator"] = self.indicator
        d["bound"] = self.bound
        if self.partial:
            d["partial"] = True
        if self.minor_witness is not None:
            d["minor_witness"] = self.minor_witness.to_json()
        return d


@dataclass
class SearchLimits:
    free_bits: int = 12          # try every W extension when at most this many degree-2 vertices
    extra_w: int = 2             # otherwise only extensions of at most this size
    max_evaluations: int = 2_000_000


def path_load(length: int, preimages: int, in_matching: bool) -> int:
    if in_matching:
        return 0
    return max(length - 1 + preimages, 1)


def _ceil3(x: int) -> int:
    return -(-x // 3)


def bound_from_loads(loads) -> tuple[int, int]:
    loads = list(loads)
    ind = 1 if any(v not in CHEAP_LOADS for v in loads) else 0
    return ind, ind + sum(_ceil3(v) for v in loads)


# ----------------------------------------------------------------------
# validation


def _deg_without(H: Graph, h: int) -> list[int]:
    return [H.degree(v) - (1 if H.has_edge(v, h) else 0) for v in range(H.n)]


def validate_decomposition(H: Graph, d: Decomposition) -> list[Violation]:
    """All violated clauses (a)-(e); an empty list means the decomposition is valid."""
    out: list[Violation] = []
    h = d.h
    if not 0 <= h < H.n:
        return [Violation("a", f"h={h} is not a vertex of H")]
    deg = _deg_without(H, h)
    iso = [v for v in range(H.n) if v != h and deg[v] == 0]
    if iso:
        out.append(Violation("isolated", f"H-h has isolated vertices {iso}"))

    if not d.W:
        out.append(Violation("b", "W is empty"))
    bad_w = sorted(w for w in d.W if not (0 <= w < H.n) or w == h)
    if bad_w:
        out.append(Violation("b", f"W contains vertices outside V(H-h): {bad_w}"))

    keys = set()
    edge_use: dict[tuple[int, int], int] = {}
    owner: dict[int, int] = {}
    for i, p in enumerate(d.paths):
        errs = p.check(H, exclude={h})
        if errs:
            out.append(Violation("c", f"path {i} is not a path of H-h: {', '.join(errs)}"))
            continue
        if p.length < 1:
            out.append(Violation("c", f"path {i} has no edges"))
        if p.key() in keys:
            out.append(Violation("c", f"path {i} duplicates an earlier path"))
        keys.add(p.key())
        off = sorted(p.ends - d.W)
        if off:
            out.append(Violation("c", f"path {i} has ends {off} outside W"))
        for x in p.interior:
            if x in d.W:
                out.append(Violation("c", f"interior vertex {x} of path {i} lies in W"))
            elif deg[x] != 2:
                out.append(Violation("c", f"interior vertex {x} of path {i} has degree {deg[x]} in H-h"))
            if x in owner:
                out.append(Violation("c", f"paths {owner[x]} and {i} share interior vertex {x}"))
            owner[x] = i
        for e in p.edge_list():
            edge_use[e] = edge_use.get(e, 0) + 1
    for i, p in enumerate(d.paths):
        for x in p.ends:
            if x in owner and owner[x] != i:
                out.append(Violation("c", f"end {x} of path {i} is interior to path {owner[x]}"))
    hh_edges = {e for e in H.edges if h not in e}
    missing = sorted(hh_edges - set(edge_use))
    if missing:
        out.append(Violation("c", f"edges {missing} of H-h lie on no path"))
    twice = sorted(e for e, c in edge_use.items() if c > 1)
    if twice:
        out.append(Violation("c", f"edges {twice} lie on more than one path"))

    used = set()
    for i in sorted(d.M):
        if not 0 <= i < len(d.paths):
            out.append(Violation("d", f"matching index {i} is not a path"))
            continue
        p = d.paths[i]
        if p.is_cycle or p.length != 1:
            out.append(Violation("d", f"matching path {i} does not have length 1"))
        if used & p.vertex_set:
            out.append(Violation("d", f"matching path {i} shares a vertex with another matching path"))
        used |= p.vertex_set

    if set(d.f) != set(d.W):
        out.append(Violation("e", f"f is defined on {sorted(d.f)} but W is {sorted(d.W)}"))
    for u, i in sorted(d.f.items()):
        if not 0 <= i < len(d.paths):
            out.append(Violation("e", f"f({u})={i} is not a path"))
        elif i in d.M:
            out.append(Violation("e", f"f({u})={i} is a matching path"))
        elif u not in d.paths[i].ends:
            out.append(Violation("e", f"{u} is not an end of f({u})={i}"))
    return out


def evaluate_bound(H: Graph, d: Decomposition) -> BoundReport:
    viol = validate_decomposition(H, d)
    if viol:
        raise DecompositionError(viol)
    counts = d.preimage_counts()
    ell = {i: path_load(p.length, counts[i], i in d.M) for i, p in enumerate(d.paths)}
    ind, bound = bound_from_loads(ell.values())
    return BoundReport(ell, ind, bound, d)


# ----------------------------------------------------------------------
# canonical path systems


def _minus_adj(H: Graph, h: int) -> list[list[int]]:
    return [[y for y in H.neighbors(x) if y != h] if x != h else [] for x in range(H.n)]


def path_system(H: Graph, h: int, W) -> tuple[PathOrCycle, ...] | None:
    """Maximal paths and rooted cycles of H-h whose interiors avoid W.

    Returns None when W does not make H-h a subdivision on W (a vertex outside
    W has degree other than 2, or some cycle component misses W).
    """
    W = set(W)
    adj = _minus_adj(H, h)
    for v in range(H.n):
        if v != h and v not in W and len(adj[v]) != 2:
            return None
    used = set()
    out = []
    for w in sorted(W):
        for nb in adj[w]:
            e = (min(w, nb), max(w, nb))
            if e in used:
                continue
            used.add(e)
            seq = [w, nb]
            prev, cur = w, nb
            while cur not in W:
                a, b = adj[cur]
                nxt = b if a == prev else a
                used.add((min(cur, nxt), max(cur, nxt)))
                seq.append(nxt)
                prev, cur = cur, nxt
            if cur == w:
                out.append(PathOrCycle(tuple(seq), "cycle", w))
            else:
                out.append(PathOrCycle(tuple(seq)))
    total = sum(len(a) for a in adj) // 2
    if len(used) != total:
        return None
    return tuple(out)


def _h_feasible(H: Graph, h: int) -> bool:
    if H.n < 2:
        return False
    deg = _deg_without(H, h)
    return all(deg[v] > 0 for v in range(H.n) if v != h)


def candidate_cores(H: Graph, h: int, limits: SearchLimits | None = None) -> tuple[list[tuple[int, ...]], bool]:
    """All core sets W to try for this h, in lexicographic order, and whether the list was truncated."""
    limits = limits or SearchLimits()
    deg = _deg_without(H, h)
    branch = [v for v in range(H.n) if v != h and deg[v] != 2]
    free = [v for v in range(H.n) if v != h and deg[v] == 2]
    partial = False
    if len(free) <= limits.free_bits:
        sizes = range(len(free) + 1)
    else:
        sizes = range(min(limits.extra_w, len(free)) + 1)
        partial = True
    cores = []
    for r in sizes:
        for extra in itertools.combinations(free, r):
            W = tuple(sorted(branch + list(extra)))
            if W:
                cores.append(W)
    cores.sort()
    return cores, partial


# ----------------------------------------------------------------------
# choosing M and f for a fixed path system


def _matchings(paths, idx) -> list[tuple[int, ...]]:
    out = []

    def rec(k, chosen, used):
        if k == len(idx):
            out.append(tuple(chosen))
            return
        i = idx[k]
        ends = paths[i].ends
        if not (ends & used):
            chosen.append(i)
            rec(k + 1, chosen, used | ends)
            chosen.pop()
        rec(k + 1, chosen, used)

    rec(0, [], frozenset())
    out.sort(key=lambda m: (-len(m), m))
    return out


def _max_matching_size(paths, idx) -> int:
    if not idx:
        return 0
    G = nx.Graph()
    G.add_edges_from(tuple(paths[i].end_pair) for i in idx)
    return len(nx.max_weight_matching(G, maxcardinality=True))


def _best_assignment(paths, W, M, threshold):
    """Cheapest f for fixed paths and matching M, if cheaper than ``threshold``.

    Returns (bound, counts, f) or None.  Costs only depend on the preimage
    counts, so states (position, counts) are explored once each.
    """
    W = sorted(W)
    lengths = [p.length for p in paths]
    options = []
    for w in W:
        opts = [i for i, p in enumerate(paths) if i not in M and w in p.ends]
        if not opts:
            return None
        options.append(opts)
    nonm = [i for i in range(len(paths)) if i not in M]

    def g(i, c):
        return _ceil3(max(lengths[i] - 1 + c, 1))

    base = sum(g(i, 0) for i in nonm)
    if base >= threshold:
        return None
    order = sorted(range(len(W)), key=lambda k: (len(options[k]), W[k]))
    counts = [0] * len(paths)
    fchoice = [None] * len(W)
    best = [threshold, None, None]
    seen = set()

    def rec(k, cur):
        if best[0] == base:
            return
        if cur >= best[0]:
            return
        if k == len(order):
            ind = 1 if any(max(lengths[i] - 1 + counts[i], 1) not in CHEAP_LOADS for i in nonm) else 0
            total = cur + ind
            if total < best[0]:
                best[0] = total
                best[1] = list(counts)
                best[2] = {W[j]: fchoice[j] for j in range(len(W))}
            return
        key = (k, tuple(counts))
        if key in seen:
            return
        seen.add(key)
        j = order[k]
        opts = sorted(options[j], key=lambda i: (g(i, counts[i] + 1) - g(i, counts[i]), i))
        for i in opts:
            delta = g(i, counts[i] + 1) - g(i, counts[i])
            counts[i] += 1
            fchoice[j] = i
            rec(k + 1, cur + delta)
            counts[i] -= 1
        fchoice[j] = None

    rec(0, base)
    if best[1] is None:
        return None
    return best[0], best[1], best[2]


def _solve_core(paths, W, threshold, budget):
    """Best (bound, M, f) for a fixed path system, if below ``threshold``."""
    lengths = [p.length for p in paths]
    l1 = [i for i, p in enumerate(paths) if not p.is_cycle and lengths[i] == 1]
    rest = sum(_ceil3(max(lengths[i] - 1, 1)) for i in range(len(paths)) if i not in l1)
    lb = rest + len(l1) - _max_matching_size(paths, l1)
    if lb >= threshold:
        return None
    best = None
    for M in _matchings(paths, l1):
        budget[0] -= 1
        if budget[0] < 0:
            break
        Mset = frozenset(M)
        res = _best_assignment(paths, W, Mset, threshold)
        if res is not None:
            threshold = res[0]
            best = (res[0], Mset, res[2])
            if threshold == lb:
                break
    return best


def _report(H, h, W, paths, M, f, partial=False) -> BoundReport:
    d = Decomposition(h, frozenset(W), paths, M, f)
    rep = evaluate_bound(H, d)
    rep.partial = partial
    return rep


def optimize(H: Graph, mode: str = "exhaustive", limits: SearchLimits | None = None) -> BoundReport:
    """Best decomposition bound found for H.

    Exhaustive mode minimises over every h, every admissible core W (subject
    to ``limits``), every matching M of length-1 paths and every f.  Ties go
    to the smallest h, then the lexicographically smallest W.
    """
    if mode == "greedy":
        return greedy(H)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    limits = limits or SearchLimits()
    budget = [limits.max_evaluations]
    partial = False
    best = None
    best_bound = float("inf")
    for h in range(H.n):
        if not _h_feasible(H, h):
            continue
        cores, trunc = candidate_cores(H, h, limits)
        partial |= trunc
        for W in cores:
            budget[0] -= 1
            if budget[0] < 0:
                partial = True
                break
            paths = path_system(H, h, W)
            if paths is None:
                continue
            res = _solve_core(paths, W, best_bound, budget)
            if budget[0] < 0:
                partial = True
            if res is not None:
                best_bound = res[0]
                best = (h, W, paths, res[1], res[2])
            if budget[0] < 0:
                break
        if budget[0] < 0:
            break
    if best is None:
        raise InfeasibleError(
            "H-h has an isolated vertex for every h; try bound_via_supergraph with a supergraph H'"
        )
    return _report(H, *best, partial=partial)


def greedy(H: Graph) -> BoundReport:
    """A feasible bound from a single cheap decomposition."""
    order = sorted(range(H.n), key=lambda v: (-H.degree(v), v))
    for h in order:
        if not _h_feasible(H, h):
            continue
        deg = _deg_without(H, h)
        W = {v for v in range(H.n) if v != h and deg[v] != 2}
        paths = path_system(H, h, W)
        if paths is None:
            # cycle components untouched by W need a root
            adj = _minus_adj(H, h)
            seen = set()
            for v in range(H.n):
                if v == h or v in seen:
                    continue
                comp = {v}
                stack = [v]
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y not in comp:
                            comp.add(y)
                            stack.append(y)
                seen |= comp
                if not comp & W:
                    W.add(min(comp))
            paths = path_system(H, h, W)
        lengths = [p.length for p in paths]
        incident = {w: [i for i, p in enumerate(paths) if w in p.ends] for w in W}
        M = set()
        used = set()
        for i, p in enumerate(paths):
            if p.is_cycle or p.length != 1 or p.ends & used:
                continue
            trial = M | {i}
            if all(any(j not in trial for j in incident[w]) for w in p.ends):
                M = trial
                used |= p.ends
        counts = [0] * len(paths)
        f = {}
        for w in sorted(W):
            def cost(i):
                now = _ceil3(max(lengths[i] - 1 + counts[i], 1))
                nxt_load = max(lengths[i] - 1 + counts[i] + 1, 1)
                return (_ceil3(nxt_load) - now, nxt_load not in CHEAP_LOADS, counts[i], i)
            i = min((j for j in incident[w] if j not in M), key=cost)
            f[w] = i
            counts[i] += 1
        return _report(H, h, W, paths, frozenset(M), f)
    raise InfeasibleError(
        "H-h has an isolated vertex for every h; try bound_via_supergraph with a supergraph H'"
    )


def bound_via_supergraph(H: Graph, H_prime: Graph, mode: str = "exhaustive",
                         limits: SearchLimits | None = None,
                         budget: int = DEFAULT_BUDGET) -> BoundReport:
    """Bound for H-minor-free graphs obtained from a decomposition of H' with H a minor of H'."""
    res = find_minor_model(H, H_prime, budget=budget)
    if not res.found:
        raise ValueError(f"H is not a minor of H' (search result: {res.status})")
    rep = optimize(H_prime, mode=mode, limits=limits)
    rep.minor_witness = res.model
    return rep


# ----------------------------------------------------------------------
# simpler corollary bounds


def _graph_matchings(edges) -> list[tuple]:
    edges = sorted(edges)
    out = []

    def rec(k, chosen, used):
        if k == len(edges):
            out.append(tuple(chosen))
            return
        a, b = edges[k]
        if a not in used and b not in used:
            chosen.append(edges[k])
            rec(k + 1, chosen, used | {a, b})
            chosen.pop()
        rec(k + 1, chosen, used)

    rec(0, [], frozenset())
    return out


def andreae_bound(H: Graph) -> int | None:
    vals = [sum(1 for e in H.edges if h not in e) for h in range(H.n) if _h_feasible(H, h)]
    return min(vals) if vals else None


def simple_matching_bound(H: Graph) -> int | None:
    best = None
    for h in range(H.n):
        if not _h_feasible(H, h):
            continue
        es = [e for e in H.edges if h not in e]
        deg = _deg_without(H, h)
        for M in _graph_matchings(es):
            left = list(deg)
            for a, b in M:
                left[a] -= 1
                left[b] -= 1
            if any(left[v] == 0 for v in range(H.n) if v != h):
                continue
            val = len(es) - len(M)
            if best is None or val < best:
                best = val
    return best


def simple_paths_bound(H: Graph, limits: SearchLimits | None = None) -> int | None:
    best = None
    for h in range(H.n):
        if not _h_feasible(H, h):
            continue
        for W in candidate_cores(H, h, limits)[0]:
            paths = path_system(H, h, W)
            if paths is None:
                continue
            val = 1 + sum(_ceil3(len(p.vertex_set)) for p in paths)
            if best is None or val < best:
                best = val
    return best


def corollary_bounds(H: Graph, limits: SearchLimits | None = None) -> dict[str, int | None]:
    """Each named bound over its own search space; None marks infeasible."""
    try:
        main = optimize(H, limits=limits).bound
    except InfeasibleError:
        main = None
    return {
        "decomposition": main,
        "andreae": andreae_bound(H),
        "simplematching": simple_matching_bound(H),
        "simplepaths": simple_paths_bound(H, limits),
    }


# ----------------------------------------------------------------------
# non-intertwined families


def _path_intertwined(order: list[int], family) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    spans = []
    for X in family:
        ps = [pos[v] for v in X]
        spans.append((min(ps), max(ps)) if len(ps) >= 2 else None)
    for i, sp in enumerate(spans):
        if sp is None:
            continue
        lo, hi = sp
        for j, Y in enumerate(family):
            if j != i and any(lo < pos[b] < hi for b in Y):
                return True
    return False


def is_non_intertwined(p: PathOrCycle, family) -> bool:
    """Whether no set has a member strictly between two members of another set.

    For a rooted cycle it suffices that one of the two paths obtained by
    deleting a root edge works.
    """
    family = [set(X) for X in family]
    on = p.vertex_set
    for X in family:
        off = X - on
        if off:
            raise ValueError(f"vertices {sorted(off)} are not on the path")
    vs = list(p.vertices)
    if not p.is_cycle:
        return not _path_intertwined(vs, family)
    body = vs[:-1]
    # deleting root-v1 leaves v1..vk, root; deleting root-vk leaves root, v1..vk
    first = body[1:] + [body[0]]
    second = body
    return not _path_intertwined(first, family) or not _path_intertwined(second, family)
