import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from copbound.graphcore import (Graph, complete, complete_bipartite, cycle, delete, dodecahedron, generate, path,
                                petersen, petersen_family)
from copbound.minor import (MinorModel, MinorResult, MinorSearchRefused, contains_minor, find_minor_model,
                            is_minor_free, search_size, verify_model)
from oracles import brute_has_minor, graphs, is_outerplanar, is_planar, series_parallel

K4, K5, K33, K23 = complete(4), complete(5), complete_bipartite(3, 3), complete_bipartite(2, 3)


@pytest.mark.parametrize("h, g, found", [
    (K5, petersen(), True),
    (K33, petersen(), True),
    (complete(6), petersen(), False),
    (K4, cycle(4), False),
    (K5, dodecahedron(), False),
    (K4, dodecahedron(), True),
    (K33, K33, True),
    (generate("W5"), petersen(), True),
])
def test_point_cases(h, g, found):
    res = find_minor_model(h, g)
    assert res.found == found
    if found:
        assert verify_model(h, g, res.model)


def test_pattern_larger_than_host_is_counting_certificate():
    res = find_minor_model(K4, path(3))
    assert res.status == "not-found" and res.certificate == "counting"


def test_k33_in_p4_minus_top_is_identity():
    g, _ = delete(petersen_family(4), [0])
    res = find_minor_model(K33, g)
    assert res.found
    assert sorted(len(b) for b in res.model.branch_sets.values()) == [1] * 6


def test_verify_model_rejects_bad_models():
    g = cycle(4)
    ok = MinorModel({0: frozenset({0}), 1: frozenset({1}), 2: frozenset({2, 3})})
    assert verify_model(complete(3), g, ok)
    overlap = MinorModel({0: frozenset({0, 1}), 1: frozenset({1}), 2: frozenset({2, 3})})
    assert not verify_model(complete(3), g, overlap)
    disconnected = MinorModel({0: frozenset({0, 2}), 1: frozenset({1}), 2: frozenset({3})})
    assert not verify_model(complete(3), g, disconnected)
    missing = MinorModel({0: frozenset({0}), 1: frozenset({1})})
    assert not verify_model(complete(3), g, missing)


def test_budget_exhaustion_is_not_a_verdict():
    res = find_minor_model(complete(6), petersen(), budget=10)
    assert res.status == "budget-exhausted"
    with pytest.raises(MinorSearchRefused):
        contains_minor(complete(6), petersen(), budget=10)


def test_cap_refusal_uses_reduced_size():
    assert search_size(K4, petersen()) == 10
    with pytest.raises(MinorSearchRefused):
        is_minor_free(K4, petersen(), cap=9)
    # a long path reduces away entirely for K4
    assert search_size(K4, path(30)) == 0
    assert is_minor_free(K4, path(30), cap=3)


def test_json_shape():
    res = find_minor_model(K4, complete(4))
    d = res.to_json()
    assert d["result"] == "found" and set(d["model"]) == {"0", "1", "2", "3"}
    assert MinorModel.from_json(d["model"]).branch_sets == res.model.branch_sets
    assert MinorResult("not-found").to_json()["result"] == "not-found"


small_patterns = st.sampled_from([complete(3), K4, cycle(4), path(3), K23, Graph(3, [(0, 1)]),
                                  Graph(4, [(0, 1), (2, 3)])])


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_patterns, graphs(min_n=1, max_n=6))
def test_agrees_with_brute_force(h, g):
    res = find_minor_model(h, g)
    assert res.status != "budget-exhausted"
    assert res.found == brute_has_minor(h, g)
    if res.found:
        assert verify_model(h, g, res.model)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=9, p=0.4))
def test_k4_freeness_is_series_parallel(g):
    assert find_minor_model(K4, g).found != series_parallel(g)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=9, p=0.35))
def test_outerplanar_equivalence(g):
    free = not find_minor_model(K4, g).found and not find_minor_model(K23, g).found
    assert free == is_outerplanar(g)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=5, max_n=9, p=0.5))
def test_planar_equivalence(g):
    free = not find_minor_model(K5, g).found and not find_minor_model(K33, g).found
    assert free == is_planar(g)
