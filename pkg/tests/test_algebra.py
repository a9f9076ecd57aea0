from hypothesis import given
from hypothesis import strategies as st

from hofib.algebra import (
    FiniteCategory,
    cyclic,
    dihedral,
    direct_product,
    discrete_category,
    free_category,
    group_groupoid,
    indiscrete_groupoid,
    is_homomorphism,
    linear_graph,
    ordinal,
    pullback_groupoid,
    symmetric,
    validate_algebra,
)

small = st.integers(min_value=1, max_value=6)


@given(small)
def test_cyclic_groups_are_valid_abelian(n):
    G = cyclic(n)
    assert validate_algebra(G).ok
    assert G.order() == n and G.is_abelian()


@given(st.integers(min_value=3, max_value=5))
def test_dihedral_order_and_centre(n):
    D = dihedral(n)
    assert validate_algebra(D).ok
    assert D.order() == 2 * n
    assert len(D.center()) == (2 if n % 2 == 0 else 1)


@given(small, small)
def test_direct_product_order(m, n):
    P = direct_product(cyclic(m), cyclic(n))
    assert validate_algebra(P).ok
    assert P.order() == m * n


@given(small, st.integers(min_value=0, max_value=5))
def test_multiplication_by_k_is_a_homomorphism(n, k):
    G = cyclic(n)
    assert is_homomorphism(G, G, {x: (k * x) % n for x in G.elements})


def test_symmetric_group_is_not_abelian():
    S = symmetric(3)
    assert S.order() == 6 and not S.is_abelian()
    A = [g for g in S.elements if S.m(g, g, g) == S.e]
    assert S.is_normal(S.subgroup(A).elements)


@given(st.integers(min_value=1, max_value=4))
def test_indiscrete_groupoid_is_connected(n):
    P = indiscrete_groupoid(list(range(n)))
    assert validate_algebra(P).ok
    assert len(P.components()) == 1
    assert len(P.morphisms) == n * n


@given(st.integers(min_value=0, max_value=4))
def test_ordinal_hom_sets(p):
    C = ordinal(p)
    assert validate_algebra(C).ok
    for i in C.objects:
        for j in C.objects:
            assert len(C.hom(i, j)) == (1 if i <= j else 0)


@given(st.integers(min_value=0, max_value=4))
def test_free_category_on_linear_graph_is_the_ordinal(p):
    F = free_category(linear_graph(p))
    assert validate_algebra(F).ok
    assert len(F.morphisms) == len(ordinal(p).morphisms)


def test_broken_composition_is_reported():
    C = discrete_category([0, 1])
    bad = FiniteCategory(C.objects, C.morphisms, {}, C.identity, name="bad")
    assert not validate_algebra(bad).ok


def test_group_groupoid_automorphisms():
    G = cyclic(4)
    P = group_groupoid(G)
    assert P.automorphism_group(P.objects[0]).order() == 4


def test_pullback_of_groupoids_over_a_point():
    P, Q = indiscrete_groupoid([0, 1]), indiscrete_groupoid(["a"])
    from hofib.algebra import GroupoidFunctor
    F = GroupoidFunctor(P, Q, {0: "a", 1: "a"}, {m: next(iter(Q.morphisms)) for m in P.morphisms})
    base, _, _ = pullback_groupoid(F, F)
    assert len(base.objects) == 4
