import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from copbound.graphcore import Graph, PathOrCycle, cycle, distance, path
from copbound.guard import (GuardedPath, GuardPreconditionError, check_guard_preconditions, guard_move,
                            guard_step, plan_guard, simulate_guard)
from oracles import graphs


@st.composite
def guard_instances(draw, max_n=8):
    g = draw(graphs(min_n=3, max_n=max_n, connected=True))
    R = set(draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=g.n)))
    u = draw(st.integers(0, g.n - 1))
    v = draw(st.integers(0, g.n - 1))
    assume(not check_guard_preconditions(g, R, u, v))
    return g, R, u, v


def test_triangle():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert plan_guard(g, {2}, 0, 1).vertices == (0, 2, 1)


def test_c5_uses_long_way_round():
    p = plan_guard(cycle(5), {1, 2, 3}, 0, 4)
    assert p.vertices == (0, 1, 2, 3, 4)


def test_preconditions_are_named():
    g = path(4)
    with pytest.raises(GuardPreconditionError) as err:
        plan_guard(g, {1}, 0, 3)
    assert any("v=3" in p for p in err.value.problems)
    assert "u and v coincide" in check_guard_preconditions(g, {1}, 0, 0)
    assert "G[R] is not connected" in check_guard_preconditions(cycle(6), {1, 3}, 2, 4)
    # v's only R-neighbour is u itself
    tri = Graph(3, [(0, 1), (1, 2)])
    assert any("no neighbour" in p for p in check_guard_preconditions(tri, {1}, 1, 2))


def test_capture_when_adjacent_and_stay_when_shadow_fixed():
    g = path(7)
    R = set(range(1, 6))
    st_ = GuardedPath.start(g, R, 0, 6)
    st_ = GuardedPath(st_.path, 3, True, st_.dist_from_u)
    assert guard_move(st_, 4, g) == 4
    # robber far from the path along its own index stays matched
    assert guard_move(GuardedPath(st_.path, 2, True, st_.dist_from_u), 4, g) == 3


def test_robber_off_path_pulls_cop_along():
    # path 0-1-2-3 with a pendant hideout 4 hanging off vertex 2
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    s = GuardedPath.start(g, {1, 2, 4}, 0, 3)
    assert s.shadow(4) == 3
    assert guard_move(GuardedPath(s.path, 2, True, s.dist_from_u), 4, g) == 4  # adjacent: capture
    step = guard_step(GuardedPath(s.path, 0, False, s.dist_from_u), 4, g)
    assert step.cop_at == 1 and not step.stabilized


def test_path_graph_stabilizes_quickly():
    for n in range(4, 9):
        g = path(n)
        rep = simulate_guard(g, set(range(1, n - 1)), 0, n - 1, "exhaustive")
        assert rep.ok and rep.unstabilized_runs == 0
        assert rep.max_stabilization_turn <= n


def test_scripted_entry_to_v_before_stabilization_is_invalid():
    rep = simulate_guard(cycle(5), {1, 2, 3}, 0, 4, "scripted", script=[3, 4])
    assert rep.invalid and "before stabilization" in rep.invalid_reason
    assert rep.ok


def test_scripted_jump_is_invalid():
    rep = simulate_guard(cycle(7), {1, 2, 3, 4, 5}, 0, 6, "scripted", script=[5, 1])
    assert rep.invalid


def test_scripted_start_must_be_in_territory():
    rep = simulate_guard(cycle(5), {1, 2, 3}, 0, 4, "scripted", script=[0])
    assert rep.invalid


def test_unknown_adversary():
    with pytest.raises(ValueError):
        simulate_guard(cycle(5), {1, 2, 3}, 0, 4, "psychic")


def test_report_json():
    rep = simulate_guard(cycle(6), {1, 2, 3, 4}, 0, 5, "random", trials=5, seed=1)
    d = rep.to_json()
    assert d["runs"] == 5 and d["path"][0] == 0 and d["trace"]


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(guard_instances())
def test_planned_path_is_a_geodesic_through_r(inst):
    g, R, u, v = inst
    p = plan_guard(g, R, u, v)
    assert p.vertices[0] == u and p.vertices[-1] == v and p.length >= 2
    assert set(p.interior) <= R
    sub_vs = sorted(R | {u, v})
    sub = Graph(g.n, [e for e in g.edges if e[0] in sub_vs and e[1] in sub_vs and set(e) != {u, v}])
    assert distance(sub, u, v) == p.length


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(guard_instances())
def test_exhaustive_contract(inst):
    g, R, u, v = inst
    rep = simulate_guard(g, R, u, v, "exhaustive", max_turns=3 * g.n)
    assert rep.violations == []
    assert rep.unstabilized_runs == 0
    assert rep.max_stabilization_turn <= 2 * g.n


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(guard_instances(max_n=12), st.integers(0, 10**6))
def test_random_walks_never_slip_through(inst, seed):
    g, R, u, v = inst
    rep = simulate_guard(g, R, u, v, "random", trials=50, seed=seed)
    assert rep.violations == [] and not rep.invalid
