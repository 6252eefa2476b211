"""Acceptance criteria, one test per criterion.

Each test prints its measurements; the PASS/FAIL line per criterion is
written by the terminal-summary hook in conftest.py.
"""

import itertools
import random
import time
from dataclasses import replace

import networkx as nx

from copbound.decomp import InfeasibleError, corollary_bounds, evaluate_bound, optimize
from copbound.gamesolver import ResourceRefusal, cop_number, cops_win, is_dismantlable
from copbound.graphcore import (Graph, complete, complete_bipartite, cycle, dodecahedron, k2t_supergraph,
                                petersen)
from copbound.guard import check_guard_preconditions, simulate_guard
from copbound.harness import build_corpus, regression_suite, verify_bound, wheel_decomposition
from copbound.minor import find_minor_model, verify_model
from copbound.modelstate import (complete_fixture, extract_minor, initial_state, state_less_than,
                                 validate_state)
from oracles import from_nx, is_outerplanar
from test_modelstate import _corruptions, _initial_triples, _random_state, k4_fixture, w5_fixture


def test_1_corollary_regression():
    """criterion 1: corollary regression and dominance on connected H with at most 7 vertices"""
    t0 = time.perf_counter()
    rows = regression_suite()
    for r in rows:
        print(f"{'ok ' if r.passed else 'BAD'} {r.name:20s} {r.method:10s} {r.got} {r.relation} {r.expected}")
    assert all(r.passed for r in rows)
    for t in (3, 5, 7):
        res = find_minor_model(complete_bipartite(2, t), k2t_supergraph(t))
        assert res.found and verify_model(complete_bipartite(2, t), k2t_supergraph(t), res.model)
    for t in range(3, 8):
        H, d = wheel_decomposition(t)
        rep = evaluate_bound(H, d)
        assert rep.bound == (0 if t in (1, 2, 4) else 1) + -(-t // 3)
    checked = 0
    for G in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(G):
            continue
        cb = corollary_bounds(from_nx(G))
        if cb["decomposition"] is None:
            continue
        checked += 1
        assert cb["decomposition"] >= 1
        if cb["simplematching"] is not None:
            assert cb["decomposition"] <= cb["simplematching"] <= cb["andreae"]
    print(f"{len(rows)} regression rows, dominance on {checked} graphs, {time.perf_counter() - t0:.1f}s")
    assert checked > 800


def test_2_dismantlable_equivalence():
    """criterion 2: one cop wins exactly on dismantlable graphs, all connected graphs on at most 6 vertices"""
    t0 = time.perf_counter()
    total = mismatches = 0
    for n in range(1, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            if not g.is_connected():
                continue
            total += 1
            mismatches += cops_win(g, 1) != is_dismantlable(g)
    print(f"{total} labelled connected graphs, {mismatches} mismatches, {time.perf_counter() - t0:.1f}s")
    assert total == 1 + 1 + 4 + 38 + 728 + 26704
    assert mismatches == 0


def test_3_solver_point_values():
    """criterion 3: cop numbers of C4 to C8, the Petersen graph and the dodecahedron"""
    for n in range(4, 9):
        assert cop_number(cycle(n)) == 2
    assert cop_number(petersen()) == 3
    t0 = time.perf_counter()
    try:
        value = cop_number(dodecahedron())
    except ResourceRefusal as e:  # allowed outcome, reported as skipped
        print(f"dodecahedron skipped: {e}")
        return
    print(f"dodecahedron cop number {value} in {time.perf_counter() - t0:.2f}s")
    assert value == 3


def test_4_empirical_bound_on_corpora():
    """criterion 4: exact cop numbers of 100-graph minor-free corpora stay within the bound"""
    cases = [("K4", [complete(4)], None), ("K2,3", [complete_bipartite(2, 3)], None),
             ("W4", [from_nx(nx.wheel_graph(5))], None), ("K3,3", [complete_bipartite(3, 3)], None),
             ("outerplanar", [complete(4), complete_bipartite(2, 3)], 2)]
    for seed, (name, forbidden, bound) in enumerate(cases):
        t0 = time.perf_counter()
        corpus = build_corpus(forbidden, (4, 10), 100, seed=seed)
        assert len(corpus.graphs) == 100 and not corpus.partial
        assert all(g.n <= 10 for g in corpus.graphs)
        if name == "outerplanar":
            assert all(is_outerplanar(g) for g in corpus.graphs)
        else:
            bound = optimize(forbidden[0]).bound
        rep = verify_bound(forbidden, corpus, bound=bound)
        print(f"{name:12s} bound {rep.bound} max cop number {rep.max_cop_number} "
              f"skipped {len(rep.skipped)} {time.perf_counter() - t0:.1f}s")
        assert not rep.skipped and len(rep.corpus) == 100
        assert rep.all_within_bound


def _guard_cases(count, seed):
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        n = rng.randint(3, 8)
        p = rng.uniform(0.15, 0.5)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
        if not g.is_connected():
            continue
        u, v = rng.sample(range(n), 2)
        R = {x for x in range(n) if x not in (u, v) and rng.random() < 0.85}
        if check_guard_preconditions(g, R, u, v):
            continue
        cases.append((g, R, u, v))
    return cases


def test_5_guarding_contract():
    """criterion 5: guarding against exhaustive robbers on 500 seeded cases"""
    t0 = time.perf_counter()
    worst = 0.0
    lengths = {}
    for g, R, u, v in _guard_cases(500, seed=2024):
        rep = simulate_guard(g, R, u, v, "exhaustive", max_turns=3 * g.n)
        assert rep.violations == [], rep.violations
        assert rep.unstabilized_runs == 0
        assert rep.max_stabilization_turn <= 2 * g.n
        worst = max(worst, rep.max_stabilization_turn / g.n)
        lengths[rep.path.length] = lengths.get(rep.path.length, 0) + 1
    print(f"500 cases, path lengths {sorted(lengths.items())}, worst stabilization {worst:.2f} n, "
          f"{time.perf_counter() - t0:.1f}s")
    assert sum(c for k, c in lengths.items() if k >= 3) >= 100


def test_6_state_machinery():
    """criterion 6: initial states, corrupted states, the progress order and minor extraction"""
    triples = _initial_triples()
    assert len(triples) >= 20
    for G, H, d in triples:
        assert validate_state(initial_state(G, H, d)) == []
    corrupt = _corruptions()
    assert len(corrupt) >= 10
    for name, st, cond in corrupt:
        assert cond in {v.condition for v in validate_state(st)}, name
    rng = random.Random(6)
    base = w5_fixture()
    for _ in range(10_000):
        a, b = _random_state(rng, base), _random_state(rng, base)
        if rng.random() < 0.3:
            b = replace(b, territory=a.territory)
        less = state_less_than(a, b)
        if a.territory == b.territory or a.territory < b.territory:
            assert less == (a.rank() < b.rank())
        else:
            assert not less
    assert validate_state(k4_fixture()) == []
    for spec_graph in (complete(4), complete_bipartite(2, 3), from_nx(nx.wheel_graph(6))):
        try:
            d = optimize(spec_graph).decomposition
        except InfeasibleError:
            raise AssertionError("fixture graph has no decomposition")
        for padding in (0, 1, 2):
            st = complete_fixture(spec_graph, d, padding=padding).state
            assert verify_model(spec_graph, st.host, extract_minor(st))
    print(f"{len(triples)} initial states, {len(corrupt)} corruptions, 10000 order pairs")
