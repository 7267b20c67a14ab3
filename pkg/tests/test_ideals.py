import math

import pytest
from hypothesis import assume, given, strategies as st
from sympy import divisor_count, prime

import annigraph.ideals as ideals_mod
from annigraph import all_ideals, annihilator, ideal_product, lattice_to_json, lemma29_check, local_structure, maximal_ideals, principal_ideal, realize
from annigraph.ideals import (
    NotLocal,
    check_special_principal_chain,
    ideal_power,
    ideals_contained_in,
    jacobson_radical,
    power_chain_below,
)

from oracles import brute_annihilator, brute_ideals, brute_product


def members(I):
    return {int(x) for x in I.members}


def named(R, I):
    return {R.name(int(x)) for x in I.members}


def test_principal_ideals_of_z12():
    R = realize("Z12")
    assert named(R, principal_ideal(R, R.index_of("4"))) == {"0", "4", "8"}
    assert principal_ideal(R, R.zero).is_zero
    assert principal_ideal(R, R.index_of("5")).is_unit


@pytest.mark.parametrize("spec,count", [("Z12", 6), ("product(Z2,Z2,Z2,Z2)", 16),
                                        ("GF(2)[x,y]/(x^2,x*y,y^2)", 6)])
def test_ideal_counts(spec, count):
    R = realize(spec)
    L = all_ideals(R)
    assert len(L) == count
    assert {frozenset(members(I)) for I in L} == brute_ideals(R.add, R.mul, R.zero)


def test_z12_labels():
    L = all_ideals(realize("Z12"))
    assert [L.label(I) for I in L] == ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]


def test_annihilators():
    R = realize("Z12")
    L = all_ideals(R)
    A = annihilator(L, principal_ideal(R, R.index_of("4")))
    assert named(R, A) == {"0", "3", "6", "9"}
    assert annihilator(L, L.zero).is_unit
    R4 = realize("Z4")
    L4 = all_ideals(R4)
    two = principal_ideal(R4, R4.index_of("2"))
    assert annihilator(L4, two) == two


def test_products_and_powers():
    R = realize("Z12")
    assert ideal_product(principal_ideal(R, R.index_of("2")), principal_ideal(R, R.index_of("6"))).is_zero
    R8 = realize("Z8")
    two = principal_ideal(R8, R8.index_of("2"))
    assert named(R8, ideal_product(two, two)) == {"0", "4"}
    assert ideal_power(two, 3).is_zero
    assert ideal_power(two, 0).is_unit


def test_ideals_contained_in():
    R8 = realize("Z8")
    L = all_ideals(R8)
    inside = ideals_contained_in(L, principal_ideal(R8, R8.index_of("2")))
    assert sorted(I.size for I in inside) == [1, 2, 4]
    assert len(ideals_contained_in(L, L.zero)) == 1
    R = realize("product(Z2,Z2,Z2,Z2)")
    L = all_ideals(R)
    half = [I for I in L if I.size == 4]
    assert len(half) == 6
    assert all(len(ideals_contained_in(L, I)) == 4 for I in half)


@pytest.mark.parametrize("spec,expected", [("Z12", {"(2)", "(3)"}), ("Z8", {"(2)"}), ("GF(7)", {"(0)"})])
def test_maximal_ideals(spec, expected):
    L = all_ideals(realize(spec))
    assert {L.label(M) for M in maximal_ideals(L)} == expected


@pytest.mark.parametrize("spec,label", [("Z12", "(6)"), ("GF(5)", "(0)"), ("GF(4)", "(0)"), ("Z8", "(2)")])
def test_jacobson_radical(spec, label):
    L = all_ideals(realize(spec))
    assert L.label(jacobson_radical(L)) == label


def test_local_structure_z4():
    R = realize("Z4")
    S = local_structure(R, all_ideals(R))
    assert (S.q, S.t, S.gorenstein, S.special_principal) == (2, 1, True, True)
    assert named(R, S.socle) == {"0", "2"}


def test_local_structure_square_zero():
    R = realize("GF(2)[x,y]/(x^2,x*y,y^2)")
    S = local_structure(R, all_ideals(R))
    assert (S.q, S.t, S.embedding_dim, S.socle.size, S.gorenstein) == (2, 1, 2, 4, False)


def test_local_structure_gorenstein_pair():
    R = realize("GF(2)[x,y]/(x^2,y^2)")
    S = local_structure(R, all_ideals(R))
    assert (S.q, S.t, S.embedding_dim, S.gorenstein) == (2, 2, 2, True)
    assert {n.replace(" ", "") for n in named(R, S.socle)} == {"0", "x*y"}


def test_local_structure_not_local():
    assert isinstance(local_structure(realize("Z12")), NotLocal)


@pytest.mark.parametrize("spec", ["Z8", "GF(2)[x,y]/(x^2,y^2)", "GF(9)", "Z9[x]/(3*x,x^2)", "GF(3)[x]/(x^4)",
                                  "GF(2)[x,y]/(x^2,x*y,y^2)"])
def test_lattice_free_structure_matches(spec):
    R = realize(spec)
    assert local_structure(R).summary() == local_structure(R, all_ideals(R)).summary()


def test_special_principal_chain():
    R = realize("Z8")
    L = all_ideals(R)
    S = local_structure(R, L)
    assert S.special_principal and check_special_principal_chain(S, L)
    assert {L.label(I) for I in L} == {"(1)", "(2)", "(4)", "(0)"}
    assert power_chain_below(S, L, 1)
    R = realize("GF(2)[x,y]/(x^2,y^2)")
    L = all_ideals(R)
    S = local_structure(R, L)
    assert not S.special_principal and not check_special_principal_chain(S, L)
    R = realize("GF(7)")
    L = all_ideals(R)
    assert check_special_principal_chain(local_structure(R, L), L)


def test_lemma29_rows():
    R = realize("Z8")
    L = all_ideals(R)
    rep = lemma29_check(local_structure(R, L), L)
    assert rep.ok
    assert rep.rows[0][:3] == ("m^1", 4, 3)
    R = realize("GF(2)[x,y]/(x^2,x*y,y^2)")
    L = all_ideals(R)
    rep = lemma29_check(local_structure(R, L), L)
    assert rep.rows[0][:3] == ("m^1", 4, 5)
    R = realize("GF(5)")
    L = all_ideals(R)
    rep = lemma29_check(local_structure(R, L), L)
    assert rep.rows == [("R", 5, 2, 1, True)]


def test_lazy_containment_matches_dense(monkeypatch):
    R = realize("product(Z2,Z2,Z4)")
    dense = all_ideals(R).containment
    monkeypatch.setattr(ideals_mod, "DENSE_CONTAINMENT_LIMIT", 0)
    L = all_ideals(R)
    assert L._dense is None
    for j in range(len(L)):
        col = L.column(j)
        assert col.tolist() == dense[:, j].tolist()
        for i in range(len(L)):
            assert bool(col[i]) == (members(L.ideals[i]) <= members(L.ideals[j]))
    assert "containment" not in lattice_to_json(L)


def test_lattice_json():
    doc = lattice_to_json(all_ideals(realize("Z12")), "Z12")
    assert doc["schema"] == 1 and len(doc["ideals"]) == 6
    assert len(doc["containment"]) == 6


@given(st.integers(2, 300))
def test_zn_ideal_count_is_divisor_count(n):
    assert len(all_ideals(realize(f"Z{n}"))) == divisor_count(n)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_field_products_have_power_of_two_ideals(idx):
    assume(math.prod(prime(i) for i in idx) <= 4096)
    spec = "product(" + ",".join(f"GF({prime(i)})" for i in idx) + ")"
    R = realize(spec)
    assert len(all_ideals(R)) == 2 ** len(idx)


@given(st.sampled_from(["Z18", "Z8", "GF(2)[x,y]/(x^2,y^2)", "product(Z2,Z4)", "Z4[x]/(2*x,x^2)", "GF(3)[x]/(x^3)"]),
       st.data())
def test_products_and_annihilators_match_brute_force(spec, data):
    R = realize(spec)
    L = all_ideals(R)
    I = data.draw(st.sampled_from(L.ideals))
    J = data.draw(st.sampled_from(L.ideals))
    assert members(ideal_product(I, J)) == brute_product(R.add, R.mul, R.zero, members(I), members(J))
    assert members(annihilator(L, I)) == brute_annihilator(R.mul, R.zero, members(I))
    # |R| = |I| * |R/I| sanity: sizes divide the order
    assert R.order % I.size == 0 and math.gcd(I.size, R.order) == I.size
