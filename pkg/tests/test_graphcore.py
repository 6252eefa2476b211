import networkx as nx
import pytest
from hypothesis import given, settings

from copbound.graphcore import (Graph, Graph6Error, PathOrCycle, add_universal, complete, complete_bipartite,
                                components, contract_edge, cycle, delete, disjoint_union, distance, distances,
                                dodecahedron, generate, ht, is_isomorphic, k2t_supergraph, parse_graph6, path,
                                petersen, petersen_family, read_graph6_file, wheel, write_graph6,
                                write_graph6_file)
from oracles import from_nx, graphs, is_planar, to_nx


def nx_g6(g):
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@given(graphs(min_n=0, max_n=12))
def test_graph6_round_trip(g):
    assert parse_graph6(write_graph6(g)) == g


@given(graphs(min_n=1, max_n=12))
def test_graph6_matches_networkx(g):
    assert write_graph6(g) == nx_g6(g)
    back = nx.from_graph6_bytes(write_graph6(g).encode())
    assert from_nx(back) == g


def test_graph6_known_strings():
    assert write_graph6(complete(4)) == "C~"
    assert parse_graph6("@") == Graph(1)
    assert parse_graph6(">>graph6<<C~") == complete(4)
    # large n uses the four-byte vertex count
    big = path(70)
    s = write_graph6(big)
    assert s[0] == "~"
    assert parse_graph6(s) == big


@pytest.mark.parametrize("text, offset", [("C~~", 2), ("C!", 1), ("", 0), ("~?", 2), ("B@", 1)])
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset


def test_graph6_file_round_trip(tmp_path):
    gs = [cycle(5), complete(3), petersen()]
    p = tmp_path / "gs.g6"
    write_graph6_file(p, gs)
    assert read_graph6_file(p) == gs


def test_graph_basics():
    g = Graph(4, [(0, 1), (2, 1), (1, 0)])
    assert g.m == 2
    assert g.neighbors(1) == (0, 2)
    assert g.closed_neighborhood(3) == {3}
    assert g.boundary({0}) == {1}
    assert not g.is_connected()
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])


def test_distances_and_components():
    g = disjoint_union([path(3), cycle(3)])
    assert distances(g, 0) == {0: 0, 1: 1, 2: 2}
    assert distance(g, 0, 4) == float("inf")
    assert components(g) == [[0, 1, 2], [3, 4, 5]]


def test_path_or_cycle():
    p = PathOrCycle((0, 1, 2))
    assert p.length == 2 and p.ends == {0, 2} and p.interior == (1,)
    c = PathOrCycle.cycle([3, 4, 5])
    assert c.vertices == (3, 4, 5, 3) and c.root == 3 and c.length == 3
    assert c.vertex_set == {3, 4, 5}
    assert p.key() == PathOrCycle((2, 1, 0)).key()
    assert PathOrCycle.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        PathOrCycle((1, 2, 1), "cycle")
    assert PathOrCycle((0, 2)).check(path(3)) == ["0-2 is not an edge"]


@pytest.mark.parametrize("spec, n, m", [
    ("K5", 5, 10), ("K3,4", 7, 12), ("C6", 6, 6), ("P5", 5, 4), ("W6", 7, 12), ("E3", 3, 0),
    ("petersen", 10, 15), ("dodecahedron", 20, 30), ("Ht:3", 11, 12), ("U(Ht:3)", 12, 23),
    ("K2t+:5", 7, 13), ("U(C4)", 5, 8),
])
def test_family_counts(spec, n, m):
    g = generate(spec)
    assert (g.n, g.m) == (n, m)


def test_families_match_networkx():
    assert is_isomorphic(petersen(), from_nx(nx.petersen_graph()))
    assert is_isomorphic(dodecahedron(), from_nx(nx.dodecahedral_graph()))
    assert is_isomorphic(wheel(5), from_nx(nx.wheel_graph(6)))
    assert is_isomorphic(complete_bipartite(3, 3), from_nx(nx.complete_bipartite_graph(3, 3)))


def test_petersen_family_shapes():
    for i in range(1, 8):
        g = petersen_family(i)
        assert g.m == 15
        assert not is_planar(g)
    assert is_isomorphic(petersen_family(7), complete(6))
    k44 = complete_bipartite(4, 4)
    k44_minus = Graph(8, [e for e in k44.edges if e != (3, 7)])
    assert is_isomorphic(petersen_family(6), k44_minus)
    # the top vertex of P_4 is universal over a K_{3,3}
    p4 = petersen_family(4)
    rest, _ = delete(p4, [0])
    assert is_isomorphic(rest, complete_bipartite(3, 3))


def test_contracting_petersen_matching_gives_k5():
    g = petersen()
    # the five spokes of the outer and inner cycle in networkx's drawing
    G = nx.petersen_graph()
    iso = nx.vf2pp_isomorphism(G, to_nx(g))
    spokes = [(iso[i], iso[i + 5]) for i in range(5)]
    for _ in range(5):
        a, b = spokes.pop()
        g, mp = contract_edge(g, (a, b))
        spokes = [(mp[x], mp[y]) for x, y in spokes]
    assert is_isomorphic(g, complete(5))


def test_constructions():
    u = add_universal(path(3))
    assert u.degree(3) == 3
    assert k2t_supergraph(3).n == 5
    with pytest.raises(ValueError):
        k2t_supergraph(4)
    h = ht(2)
    assert h.degree(0) == h.degree(1) == 2 and h.m == 8
    with pytest.raises(ValueError):
        generate("nonsense")


@settings(max_examples=50)
@given(graphs(min_n=2, max_n=8))
def test_contract_edge_matches_networkx(g):
    if not g.edges:
        return
    e = min(g.edges)
    c, _ = contract_edge(g, e)
    G = nx.contracted_nodes(to_nx(g), e[0], e[1], self_loops=False)
    assert is_isomorphic(c, from_nx(G))
