import json
import math

import networkx as nx
import pytest
from hypothesis import assume, given, strategies as st

from annigraph import (
    Graph,
    GraphError,
    RotationSystem,
    all_ideals,
    build_ag,
    complete_bipartite_graph,
    complete_graph,
    embedding_genus,
    euler_lower_bound,
    genus_complete,
    genus_complete_bipartite,
    genus_exact,
    genus_upper_search,
    graph_from_json,
    is_planar,
    realize,
    trace_faces,
)
from annigraph.genus import RotationError, budget_from_env

from oracles import max_faces_brute


def ag(spec):
    R = realize(spec)
    return build_ag(R, all_ideals(R))


def graph_of(nxg):
    nxg = nx.convert_node_labels_to_integers(nxg)
    return Graph.from_edges(nxg.number_of_nodes(), nxg.edges())


@pytest.mark.parametrize("n,g", [(4, 0), (7, 1), (8, 2), (3, 0), (12, 6)])
def test_genus_complete(n, g):
    assert genus_complete(n) == g


@pytest.mark.parametrize("m,n,g", [(3, 3, 1), (4, 4, 1), (1, 99, 0), (2, 50, 0), (5, 6, 3)])
def test_genus_complete_bipartite(m, n, g):
    assert genus_complete_bipartite(m, n) == g


def test_euler_lower_bound_examples():
    assert euler_lower_bound(complete_graph(5)) == 1
    assert euler_lower_bound(complete_bipartite_graph(3, 3)) == 1
    assert euler_lower_bound(ag("product(Z2,Z2,Z2,Z2)")) == 0


def test_planarity_certificates():
    res = is_planar(ag("Z12"))
    assert res and res.rotation is not None
    K5 = complete_graph(5)
    res = is_planar(K5)
    assert not res and res.certificate.kind == "K5" and res.certificate.verify(K5)
    G = ag("product(Z2,Z2,Z2,Z2)")
    res = is_planar(G)
    assert not res and res.certificate.verify(G)


def test_face_tracing_small_cases():
    K4 = complete_graph(4)
    planar = is_planar(K4).rotation
    assert trace_faces(K4, planar) == 4 and embedding_genus(K4, planar) == 0
    C5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    rot = RotationSystem.of([C5.neighbors(v) for v in range(5)])
    assert trace_faces(C5, rot) == 2


def test_k33_no_rotation_is_planar():
    G = complete_bipartite_graph(3, 3)
    best = max_faces_brute(G.edge_list, G.n)
    assert best <= 5
    assert best == 3  # so V - E + F = 0 at best: genus 1


def test_rotation_validation():
    with pytest.raises(RotationError):
        RotationSystem.of([[1], [0], []]).validate(complete_graph(3))


def test_upper_search_examples():
    up, rot = genus_upper_search(complete_graph(5))
    assert up == 1 and trace_faces(complete_graph(5), rot) == 5
    tree = graph_of(nx.balanced_tree(2, 3))
    up, rot = genus_upper_search(tree)
    assert up == 0 and trace_faces(tree, rot) == 1
    G = ag("product(Z2,Z2,Z2,Z2)")
    up, rot = genus_upper_search(G, budget_ms=5000)
    assert up == 1 and trace_faces(G, rot) == 11


@pytest.mark.parametrize("G,g", [(complete_graph(7), 1), (complete_graph(6), 1), (complete_bipartite_graph(3, 4), 1),
                                 (complete_bipartite_graph(4, 4), 1), (complete_bipartite_graph(3, 5), 1), (complete_bipartite_graph(4, 5), 2),
                                 (graph_of(nx.petersen_graph()), 1), (graph_of(nx.heawood_graph()), 1)])
def test_genus_exact_known_values(G, g):
    res = genus_exact(G, 60000)
    assert res.status == "exact" and res.lower == g
    assert embedding_genus(G, res.rotation) == g


def test_genus_exact_ag_examples():
    res = genus_exact(ag("Z12"), 5000)
    assert (res.lower, res.upper, res.status) == (0, 0, "exact")
    res = genus_exact(ag("product(Z2,Z2,Z2,Z2)"), 60000)
    assert (res.lower, res.upper, res.status) == (1, 1, "exact")


def test_genus_exact_json():
    doc = genus_exact(ag("Z12"), 5000).to_json()
    assert {"lower", "upper", "status", "evidence", "schema"} <= set(doc)
    json.dumps(doc)


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("ANNIGRAPH_BUDGET_MS", "1234")
    assert budget_from_env() == 1234
    monkeypatch.delenv("ANNIGRAPH_BUDGET_MS")
    assert budget_from_env() == 60000


def test_tiny_budget_gives_sound_bounds():
    res = genus_exact(complete_graph(9), budget_ms=1)
    assert res.lower <= 3 <= res.upper
    assert res.status in ("exact", "timeout")
    assert embedding_genus(complete_graph(9), res.rotation) == res.upper


def test_graph_json_round_trip():
    G = ag("Z12")
    H = graph_from_json(json.dumps(G.to_json()))
    assert H.edge_list == G.edge_list and H.names == G.names
    with pytest.raises(GraphError):
        graph_from_json({"vertices": [0, 2], "edges": []})
    with pytest.raises(GraphError):
        graph_from_json({"vertices": [0, 1], "edges": [[0, 0]]})
    with pytest.raises(GraphError):
        graph_from_json({"edges": []})


# ---------------------------------------------------------------- properties

small_graphs = st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * 3)))


def make(n_edges):
    n, pairs = n_edges
    return Graph.from_edges(n, {tuple(sorted(p)) for p in pairs if p[0] != p[1]})


@given(small_graphs)
def test_planar_iff_genus_zero(ne):
    G = make(ne)
    res = genus_exact(G, 20000)
    planar = nx.check_planarity(G.to_networkx())[0]
    assert (res.lower == 0) == planar
    assert res.lower <= res.upper
    assert euler_lower_bound(G) <= res.lower


@given(small_graphs, small_graphs)
def test_genus_additive_over_disjoint_union(a, b):
    G, H = make(a), make(b)
    U = Graph.from_edges(G.n + H.n, list(G.edge_list) + [(u + G.n, v + G.n) for u, v in H.edge_list])
    gg, gh, gu = genus_exact(G, 20000), genus_exact(H, 20000), genus_exact(U, 40000)
    assert gg.status == gh.status == gu.status == "exact"
    assert gu.lower == gg.lower + gh.lower


@given(small_graphs, st.data())
def test_edge_deletion_never_raises_genus(ne, data):
    G = make(ne)
    assume(G.edge_count > 0)
    e = data.draw(st.sampled_from(G.edge_list))
    H = Graph.from_edges(G.n, [f for f in G.edge_list if f != e])
    gG, gH = genus_exact(G, 20000), genus_exact(H, 20000)
    assert gG.status == gH.status == "exact"
    assert gH.lower <= gG.lower


@given(st.integers(4, 7), st.integers(0, 10**6))
def test_exact_genus_matches_brute_force_rotations(n, seed):
    g = nx.gnp_random_graph(n, 0.6, seed=seed)
    assume(nx.is_connected(g))
    assume(math.prod(math.factorial(max(d - 1, 0)) for _, d in g.degree()) <= 3000)
    G = graph_of(g)
    f = max_faces_brute(G.edge_list, G.n)
    expected = (2 - G.n + G.edge_count - f) // 2
    res = genus_exact(G, 20000)
    assert res.status == "exact" and res.lower == expected


@given(small_graphs, st.integers(0, 10**6))
def test_any_rotation_bounds_genus_from_above(ne, seed):
    import random

    G = make(ne)
    rnd = random.Random(seed)
    rows = []
    for v in range(G.n):
        r = list(G.neighbors(v))
        rnd.shuffle(r)
        rows.append(r)
    rot = RotationSystem.of(rows)
    assert embedding_genus(G, rot) >= genus_exact(G, 20000).lower
