from math import comb

import pytest
from conftest import by_name
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib.algebra import cyclic, indiscrete_groupoid, linear_graph, ordinal
from hofib.bicategory import LAX, discrete_bicategory, identity_lax
from hofib.monoidal import delooping, discrete_monoidal_group
from hofib.nerve import (
    VARIANTS,
    adjunction_bijection,
    compare_with_ordinary,
    geometric_nerve,
    graph_adjunction,
    grothendieck_nerve,
    lax_to_simplex,
    nerve_functoriality,
    nerve_identity_check,
    nerve_projection,
    simplex_to_lax,
)
from hofib.simplicial import (
    TruncatedSimplicialSet,
    check_simplicial_map,
    kan_check,
    ordinary_nerve,
    validate_simplicial,
)
from hofib.suites import grothendieck_faces


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=3))
def test_ordinary_nerve_of_an_ordinal_counts_monotone_maps(p, N):
    S = ordinary_nerve(ordinal(p), N)
    assert validate_simplicial(S).ok
    for n in range(N + 1):
        assert len(S.cells[n]) == comb(p + n + 1, n + 1)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.sampled_from(VARIANTS))
def test_discrete_geometric_nerve_is_the_ordinary_nerve(k, variant):
    assert compare_with_ordinary(indiscrete_groupoid(list(range(k))), variant, 3).ok


@settings(max_examples=8, deadline=None)
@given(st.integers(min_value=1, max_value=4))
def test_normal_nerve_of_a_group_is_its_classifying_nerve(n):
    B = delooping(discrete_monoidal_group(cyclic(n)))
    S = geometric_nerve(B, "normal-lax", 3)
    assert validate_simplicial(S).ok
    assert [len(c) for c in S.cells] == [n ** k for k in range(4)]


@pytest.mark.parametrize("variant", VARIANTS)
def test_geometric_nerves_of_the_twisted_group(corpus, variant):
    S = geometric_nerve(by_name(corpus.bicategories, "SZ2[w]"), variant, 3)
    assert validate_simplicial(S).ok


def test_simplex_and_lax_functor_agree(corpus):
    B = by_name(corpus.bicategories, "SN<=2ord")
    S = geometric_nerve(B, "lax", 2)
    for x in S.cells[2]:
        assert lax_to_simplex(simplex_to_lax(x, B), 2) == x


def test_corrupted_face_map_is_detected(corpus):
    S = geometric_nerve(by_name(corpus.bicategories, "SZ2"), "normal-lax", 3)
    face = {k: dict(v) for k, v in S.face.items()}
    x = sorted(face[(2, 0)], key=repr)[0]
    other = [y for y in S.cells[1] if y != face[(2, 0)][x]]
    face[(2, 0)][x] = other[0]
    bad = TruncatedSimplicialSet(S.N, S.cells, face, S.degeneracy, name="bad")
    assert not validate_simplicial(bad).ok


def test_nerve_of_a_groupoid_is_kan():
    S = ordinary_nerve(indiscrete_groupoid([0, 1]), 3)
    for n in range(1, 3):
        for k in range(n + 1):
            assert kan_check(S, n, k).ok


def test_nerve_of_an_ordinal_is_not_kan():
    S = ordinary_nerve(ordinal(1), 3)
    assert kan_check(S, 1, 0).ok
    assert not kan_check(S, 2, 0).ok


def test_identity_map_of_simplicial_sets(corpus):
    S = geometric_nerve(by_name(corpus.bicategories, "[2]"), "lax", 3)
    maps = [{x: x for x in c} for c in S.cells]
    assert check_simplicial_map(S, S, maps, bijective=True).ok


def test_grothendieck_nerve_constraints(corpus):
    for name in ("SZ2[w]", "SN<=2ord"):
        B = by_name(corpus.bicategories, name)
        assert grothendieck_nerve(B, 3).check(3).ok
        assert grothendieck_faces(B, 3).ok


def test_grothendieck_objects_are_composable_strings(corpus):
    B = by_name(corpus.bicategories, "SZ2")
    G = grothendieck_nerve(B, 2)
    assert len(G.objects(0)) == 1
    assert len(G.objects(2)) == len(B.cells1) ** 2


def test_graph_adjunction_and_bijection(corpus):
    B = by_name(corpus.bicategories, "SN<=2")
    for p in range(3):
        assert graph_adjunction(linear_graph(p), B).check().ok
        assert adjunction_bijection(B, p).ok


def test_projection_is_pseudo_simplicial(corpus):
    assert nerve_projection(by_name(corpus.bicategories, "[2]"), 2).check(2).ok


def test_nerve_functoriality(corpus):
    B = by_name(corpus.bicategories, "SZ2[w]")
    assert nerve_identity_check(B, 2).ok
    one = identity_lax(B, LAX)
    assert nerve_functoriality(one, one, 2).ok
    F, Fp = corpus.lax_pairs[0]
    assert nerve_functoriality(F, Fp, 2).ok


def test_cyclic_graph_is_rejected():
    from hofib.algebra import FiniteGraph, free_category
    g = FiniteGraph([0], [("loop", 0, 0)])
    with pytest.raises(ValueError, match="infinite free category"):
        free_category(g)


def test_discrete_bicategory_nerve_counts():
    B = discrete_bicategory(ordinal(1))
    S = geometric_nerve(B, "lax", 2)
    assert [len(c) for c in S.cells] == [2, 3, 4]
