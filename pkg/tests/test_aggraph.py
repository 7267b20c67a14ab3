import json
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from annigraph import (
    HypothesisNotMet,
    SubgraphWitness,
    WitnessError,
    all_ideals,
    build_ag,
    build_zdg,
    export_graph,
    genus_lower_from_witnesses,
    lemma28_witness,
    local_structure,
    realize,
    square_zero_clique_witnesses,
    zero_product_bipartite_witnesses,
)
from annigraph.aggraph import lemma21_vertex_check

from oracles import brute_ag_edges


def ag(spec):
    R = realize(spec)
    L = all_ideals(R)
    return R, L, build_ag(R, L)


def edge_names(G):
    return {frozenset((G.names[u], G.names[v])) for u, v in G.edge_list}


def test_ag_z4():
    _, _, G = ag("Z4")
    assert (G.n, G.edge_count, G.names) == (1, 0, ("(2)",))


def test_ag_z12():
    _, _, G = ag("Z12")
    assert set(G.names) == {"(2)", "(3)", "(4)", "(6)"}
    assert edge_names(G) == {frozenset(p) for p in [("(2)", "(6)"), ("(3)", "(4)"), ("(4)", "(6)")]}


def test_ag_four_fields_is_subset_disjointness_graph():
    R, L, G = ag("product(Z2,Z2,Z2,Z2)")
    assert (G.n, G.edge_count) == (14, 25)
    # an ideal of F^4 is determined by which coordinates of 1 it keeps
    def support(I):
        return frozenset(i for i in range(4) if any(R.name(int(x)).strip("()").split(",")[i] != "0" for x in I.members))
    supports = [support(L.ideals[v]) for v in G.vertex_labels]
    subsets = [frozenset(s) for k in (1, 2, 3) for s in combinations(range(4), k)]
    oracle = nx.Graph([(a, b) for a in subsets for b in subsets if a != b and not a & b])
    mine = nx.relabel_nodes(G.to_networkx(), dict(enumerate(supports)))
    assert set(mine.nodes) == set(subsets)
    assert {frozenset(e) for e in mine.edges} == {frozenset(e) for e in oracle.edges}


@pytest.mark.parametrize("spec", ["Z12", "Z36", "GF(2)[x,y]/(x^2,y^2)", "product(Z2,Z4)", "product(Z2,GF(4))",
                                  "Z4[x]/(2*x,x^2)", "GF(3)[x]/(x^3)", "product(Z3,Z3,Z2)"])
def test_ag_matches_brute_force(spec):
    R, L, G = ag(spec)
    verts, edges = brute_ag_edges(R.add, R.mul, R.zero)
    mine_v = {frozenset(int(x) for x in L.ideals[v].members) for v in G.vertex_labels}
    assert mine_v == set(verts)
    mine_e = {frozenset((frozenset(int(x) for x in L.ideals[G.vertex_labels[u]].members),
                         frozenset(int(x) for x in L.ideals[G.vertex_labels[v]].members))) for u, v in G.edge_list}
    assert mine_e == edges


def test_zdg_examples():
    G = build_zdg(realize("Z4"))
    assert (G.names, G.edge_count) == (("2",), 0)
    G = build_zdg(realize("Z6"))
    assert G.names == ("2", "3", "4")
    assert edge_names(G) == {frozenset(("2", "3")), frozenset(("3", "4"))}
    assert build_zdg(realize("GF(7)")).n == 0


@pytest.mark.parametrize("spec", ["Z12", "GF(5)", "product(Z2,Z2,Z2)", "GF(2)[x,y]/(x^2,y^2)", "Z64"])
def test_lemma21_vertex_check(spec):
    R = realize(spec)
    L = all_ideals(R)
    assert lemma21_vertex_check(R, L)
    assert build_ag(R, L).n == len(L) - 2 if len(L) > 2 else build_ag(R, L).n == 0


def test_square_zero_clique_witness():
    R, L, G = ag("GF(2)[x,y]/(x^2,x*y,y^2)")
    assert G.is_complete() and G.n == 4
    ws = square_zero_clique_witnesses(L, G)
    assert max(w.shape for w in ws) == ("complete", 4)
    for spec in ("Z8", "product(Z2,Z2)"):
        R, L, G = ag(spec)
        assert not square_zero_clique_witnesses(L, G)


def test_bipartite_witnesses():
    R, L, G = ag("product(Z2,Z2,Z2,Z2)")
    ws = zero_product_bipartite_witnesses(L, G)
    assert [w.name() for w in ws] == ["K3,3"]
    assert genus_lower_from_witnesses(ws) == 1
    for spec in ("Z12", "GF(2)[x,y]/(x^2,y^2)"):
        R, L, G = ag(spec)
        assert zero_product_bipartite_witnesses(L, G) == []


def test_witness_verification_rejects_bad_edges():
    R, L, G = ag("Z12")
    ids = {L.label(I): k for k, I in enumerate(L.ideals)}
    SubgraphWitness.verified(G, [[ids["(3)"]], [ids["(4)"]]], [ids["(3)"], ids["(4)"]])
    with pytest.raises(WitnessError):
        SubgraphWitness.verified(G, [[ids["(2)"]], [ids["(3)"]]], [ids["(2)"], ids["(3)"]])
    with pytest.raises(WitnessError):
        SubgraphWitness.verified(L, [[ids["(2)"], ids["(3)"]]], [ids["(2)"]])
    with pytest.raises(WitnessError):
        SubgraphWitness.verified(L, [[ids["(4)"]], [ids["(4)"]]], [ids["(4)"]])


@pytest.mark.parametrize("spec", ["GF(2)[x,y]/(x^2,y^2)", "Z8", "Z12", "GF(4)"])
def test_lemma28_hypothesis_not_met(spec):
    R = realize(spec)
    L = all_ideals(R)
    res = lemma28_witness(R, L, local_structure(R, L))
    assert isinstance(res, HypothesisNotMet) and not res


def test_export_formats():
    _, _, G = ag("Z12")
    dot = export_graph(G, "dot")
    assert dot.count("label=") == 4 and dot.count(" -- ") == 3
    for lab in ("(2)", "(3)", "(4)", "(6)"):
        assert f'"{lab}"' in dot
    doc = json.loads(export_graph(ag("GF(7)")[2], "json"))
    assert doc["vertices"] == [] and doc["edges"] == []
    dot = export_graph(ag("Z4")[2], "dot")
    assert dot.count("label=") == 1 and " -- " not in dot
    with pytest.raises(ValueError):
        export_graph(G, "svg")


@given(st.sampled_from([2, 3, 5]), st.integers(2, 6), st.booleans())
def test_special_principal_edge_rule(p, k, truncated):
    if p**k > 4096:
        return
    spec = f"GF({p})[x]/(x^{k})" if truncated else f"Z{p**k}"
    R = realize(spec)
    L = all_ideals(R)
    S = local_structure(R, L)
    assert S.special_principal
    t = S.t
    G = build_ag(R, L)
    level = {L.id_of(S.powers[i]): i for i in range(1, t + 1)}
    assert set(G.vertex_labels) == set(level)
    for u in range(G.n):
        for v in range(G.n):
            if u != v:
                i, j = level[G.vertex_labels[u]], level[G.vertex_labels[v]]
                assert G.has_edge(u, v) == (i + j >= t + 1)


def test_build_ag_vertex_limit():
    from annigraph.aggraph import GraphTooLarge

    R = realize("Z12")
    with pytest.raises(GraphTooLarge):
        build_ag(R, all_ideals(R), max_vertices=3)
