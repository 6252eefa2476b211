"""Seeded minor-free corpora, empirical bound checks and the regression table.

Corpora use Python's ``random.Random`` (Mersenne Twister MT19937) seeded with
the integer given, so the same seed and flags give identical corpora.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decomp import (BoundReport, Decomposition, bound_via_supergraph, corollary_bounds, evaluate_bound,
                     optimize, path_system)
from .gamesolver import ResourceRefusal, cop_number
from .graphcore import (Graph, add_universal, complete, complete_bipartite, ht, k2t_supergraph, petersen_family,
                        wheel, write_graph6)
from .minor import DEFAULT_BUDGET, DEFAULT_CAP, MinorSearchRefused, contains_minor

log = logging.getLogger(__name__)


@dataclass
class Corpus:
    graphs: list[Graph]
    certificates: list[dict[str, str]]  # per graph: forbidden g6 -> certificate
    requested: int
    attempts: int
    warning: str = ""

    @property
    def partial(self) -> bool:
        return len(self.graphs) < self.requested

    def to_json(self) -> dict:
        return {
            "requested": self.requested,
            "size": len(self.graphs),
            "attempts": self.attempts,
            "partial": self.partial,
            "warning": self.warning,
            "graphs": [{"g6": write_graph6(g), "certificates": c}
                       for g, c in zip(self.graphs, self.certificates)],
        }


def _free_of_all(forbidden, g, cap, budget):
    """Certificates when g has none of the forbidden minors, else None."""
    certs = {}
    for H in forbidden:
        res = contains_minor(H, g, cap=cap, budget=budget)
        if res.found:
            return None
        certs[write_graph6(H)] = res.certificate
    return certs


def _random_tree(rng: random.Random, n: int) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def build_corpus(forbidden, n_range=(4, 10), count: int = 100, seed: int = 0,
                 max_attempts: int | None = None, cap: int = DEFAULT_CAP,
                 budget: int = DEFAULT_BUDGET) -> Corpus:
    """Connected graphs with none of the ``forbidden`` minors.

    Each attempt draws n, a random spanning tree and an edge target, then adds
    shuffled non-edges one at a time, keeping an edge only if the graph stays
    minor-free.  Duplicates (same labelled graph6) are dropped.
    """
    if isinstance(forbidden, Graph):
        forbidden = [forbidden]
    forbidden = list(forbidden)
    lo, hi = n_range
    rng = random.Random(seed)
    max_attempts = max_attempts if max_attempts is not None else 20 * count + 100
    seen = set()
    graphs, certs = [], []
    attempts = 0
    while len(graphs) < count and attempts < max_attempts:
        attempts += 1
        n = rng.randint(lo, hi)
        edges = _random_tree(rng, n)
        g = Graph(n, edges)
        cert = _free_of_all(forbidden, g, cap, budget)
        if cert is None:
            continue
        target = rng.randint(n - 1, n * (n - 1) // 2)
        missing = [e for e in itertools.combinations(range(n), 2) if not g.has_edge(*e)]
        rng.shuffle(missing)
        for e in missing:
            if g.m >= target:
                break
            trial = Graph(n, list(g.edges) + [e])
            c = _free_of_all(forbidden, trial, cap, budget)
            if c is not None:
                g, cert = trial, c
        key = write_graph6(g)
        if key in seen:
            continue
        seen.add(key)
        graphs.append(g)
        certs.append(cert)
    warning = ""
    if len(graphs) < count:
        warning = f"only {len(graphs)} of {count} graphs found in {attempts} attempts"
        log.warning(warning)
    return Corpus(graphs, certs, count, attempts, warning)


# ----------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    forbidden: str
    bound: int
    corpus: list[tuple[str, int]]
    max_cop_number: int | None
    all_within_bound: bool
    skipped: list[tuple[str, str]] = field(default_factory=list)
    certificates: dict[str, dict[str, str]] = field(default_factory=dict)
    empty: bool = False
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self, include_timings: bool = False) -> dict:
        d = {
            "forbidden": self.forbidden,
            "bound": self.bound,
            "corpus": [{"g6": g, "cop_number": c, "certificates": self.certificates.get(g, {})}
                       for g, c in self.corpus],
            "max_cop_number": self.max_cop_number,
            "all_within_bound": self.all_within_bound,
            "skipped": [{"g6": g, "reason": r} for g, r in self.skipped],
            "empty": self.empty,
        }
        if include_timings:
            d["timings"] = self.timings
        return d


def _solve_one(args):
    g6, g, forbidden, cap, budget, mem = args
    try:
        certs = _free_of_all(forbidden, g, cap, budget)
    except MinorSearchRefused as e:
        return g6, None, None, f"minor check refused: {e}"
    if certs is None:
        return g6, None, None, "contains a forbidden minor"
    try:
        return g6, cop_number(g, cap=mem), certs, ""
    except ResourceRefusal as e:
        return g6, None, certs, f"solver refused: {e}"


def verify_bound(forbidden, corpus, bound: int | BoundReport | None = None, workers: int = 1,
                 cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET,
                 mem_cap: int | None = None) -> VerificationReport:
    """Exact cop numbers of a certified corpus against the decomposition bound.

    ``bound`` defaults to exhaustive optimize on the (first) forbidden graph;
    pass a BoundReport or integer when it comes from a supergraph.
    """
    if isinstance(forbidden, Graph):
        forbidden = [forbidden]
    forbidden = list(forbidden)
    graphs = corpus.graphs if isinstance(corpus, Corpus) else list(corpus)
    t0 = time.perf_counter()
    if bound is None:
        bound = optimize(forbidden[0]).bound
    elif isinstance(bound, BoundReport):
        bound = bound.bound
    t1 = time.perf_counter()
    jobs = sorted(((write_graph6(g), g, forbidden, cap, budget, mem_cap) for g in graphs), key=lambda j: j[0])
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_solve_one, jobs))
    else:
        results = [_solve_one(j) for j in jobs]
    t2 = time.perf_counter()
    rows, skipped, certs = [], [], {}
    for g6, c, cert, why in results:
        if why:
            skipped.append((g6, why))
        else:
            rows.append((g6, c))
            certs[g6] = cert
    values = [c for _, c in rows]
    top = max(values) if values else None
    return VerificationReport(
        "+".join(write_graph6(h) for h in forbidden), bound, rows, top,
        all(c <= bound for c in values), skipped, certs, not rows,
        {"bound_s": t1 - t0, "solve_s": t2 - t1},
    )


# ----------------------------------------------------------------------
# regression table


@dataclass
class RegressionRow:
    name: str
    method: str      # "optimize" | "explicit" | "supergraph" | "corollary"
    relation: str    # "==" or "<="
    expected: int
    got: int | None
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.got is None:
            return False
        return self.got == self.expected if self.relation == "==" else self.got <= self.expected

    def to_json(self):
        return {"name": self.name, "method": self.method, "relation": self.relation,
                "expected": self.expected, "got": self.got, "passed": self.passed, "note": self.note}


def _decomposition_from(H: Graph, h: int, W, M_edges=(), f_edges=None, f_first=None) -> Decomposition:
    """Decomposition with the canonical path system; M and f given by end pairs.

    ``f_edges`` maps w -> (end, end) of its path; ``f_first`` maps w -> the
    path's second vertex when that identifies it (used for cycles).
    """
    paths = path_system(H, h, W)
    if paths is None:
        raise ValueError("core set does not give a path system")

    def by_pair(pair):
        pair = tuple(sorted(pair))
        hits = [i for i, p in enumerate(paths) if not p.is_cycle and p.end_pair == pair]
        if len(hits) != 1:
            raise ValueError(f"no unique path with ends {pair}")
        return hits[0]

    M = frozenset(by_pair(e) for e in M_edges)
    f = {}
    for w, pair in (f_edges or {}).items():
        f[w] = by_pair(pair)
    for w, nb in (f_first or {}).items():
        f[w] = next(i for i, p in enumerate(paths) if w in p.ends and nb in p.vertex_set)
    return Decomposition(h, frozenset(W), paths, M, f)


def k3t_decomposition(t: int) -> tuple[Graph, Decomposition]:
    H = complete_bipartite(3, t)
    # h and the other two vertices of the small side; paths a - x - b
    d = _decomposition_from(H, 0, {1, 2}, f_first={1: 3, 2: 4})
    return H, d


def k2t_decomposition(t: int) -> tuple[Graph, Decomposition]:
    Hp = k2t_supergraph(t)
    h, a, b = t + 1, t, t - 1
    d = _decomposition_from(Hp, h, {a, b}, f_edges={a: (a, b), b: (a, b)})
    return Hp, d


def complete_decomposition(t: int) -> tuple[Graph, Decomposition]:
    H = complete(t)
    W = set(range(1, t))
    verts = sorted(W)
    M = [(verts[i], verts[i + 1]) for i in range(0, len(verts) - 1, 2)]
    d = _decomposition_from(H, 0, W, M_edges=M)
    # spread f over distinct non-matching edges
    load = [0] * len(d.paths)
    f = {}
    for w in verts:
        opts = [i for i, p in enumerate(d.paths) if i not in d.M and w in p.ends]
        i = min(opts, key=lambda j: (load[j], j))
        f[w] = i
        load[i] += 1
    d.f = f
    return H, d


def wheel_decomposition(t: int) -> tuple[Graph, Decomposition]:
    H = wheel(t)
    d = _decomposition_from(H, t, {0}, f_first={0: 1})
    return H, d


def petersen_decomposition(i: int) -> tuple[Graph, Decomposition]:
    H = petersen_family(i)
    W = {1, 2, 3, 4, 5, 6}
    M = [(1, 5), (2, 6), (3, 4)]
    f = {1: (1, 6), 6: (1, 6), 2: (2, 4), 4: (2, 4), 3: (3, 5), 5: (3, 5)}
    return H, _decomposition_from(H, 0, W, M_edges=M, f_edges=f)


def ht_decomposition(t: int) -> tuple[Graph, Decomposition]:
    H = add_universal(ht(t))
    h = H.n - 1
    d = _decomposition_from(H, h, {0, 1}, f_first={0: 2, 1: 2})
    return H, d


def regression_suite(include_slow: bool = True) -> list[RegressionRow]:
    rows: list[RegressionRow] = []

    def explicit(name, build, expected):
        H, d = build()
        rows.append(RegressionRow(name, "explicit", "==", expected, evaluate_bound(H, d).bound))

    def optimal(name, H, rel, expected):
        rows.append(RegressionRow(name, "optimize", rel, expected, optimize(H).bound))

    for t in (3, 4, 5, 6):
        explicit(f"K3,{t}", lambda: k3t_decomposition(t), t)
        optimal(f"K3,{t}", complete_bipartite(3, t), "==", t)
    for t in (3, 5, 7):
        explicit(f"K2,{t}", lambda: k2t_decomposition(t), (t + 1) // 2)
        rep = bound_via_supergraph(complete_bipartite(2, t), k2t_supergraph(t))
        rows.append(RegressionRow(f"K2,{t}", "supergraph", "==", (t + 1) // 2, rep.bound,
                                  "minor witness verified"))
    rep = bound_via_supergraph(complete_bipartite(2, 4), k2t_supergraph(5))
    rows.append(RegressionRow("K2,4", "supergraph", "==", 3, rep.bound, "via the t=5 supergraph"))
    for t, want in ((4, 2), (5, 4), (6, 8)):
        explicit(f"K{t}", lambda: complete_decomposition(t), want)
        optimal(f"K{t}", complete(t), "==", want)
    for t in (3, 4, 5, 6, 7):
        ell = t
        ind = 0 if ell in (0, 1, 2, 4) else 1
        explicit(f"W{t}", lambda: wheel_decomposition(t), ind + -(-t // 3))
        optimal(f"W{t}", wheel(t), "<=", -(-t // 3) + 1)
        rows.append(RegressionRow(f"W{t}", "corollary", "<=", -(-t // 3) + 1,
                                  corollary_bounds(wheel(t))["simplepaths"], "simple paths"))
    for i in (1, 2, 3, 4):
        explicit(f"petersen_family({i})", lambda: petersen_decomposition(i), 6)
        optimal(f"petersen_family({i})", petersen_family(i), "<=", 6)
    for t in ((2, 3, 4) if include_slow else (2, 3)):
        explicit(f"U(H_{t})", lambda: ht_decomposition(t), t + 2)
        optimal(f"U(H_{t})", add_universal(ht(t)), "==", t + 2)
    cb = corollary_bounds(complete(6))
    rows.append(RegressionRow("K6", "corollary", "==", 10, cb["andreae"], "edge count bound"))
    rows.append(RegressionRow("K6", "corollary", "==", 8, cb["simplematching"], "matching bound"))
    return rows

