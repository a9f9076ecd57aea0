import pytest
from conftest import by_name
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib._util import ResourceLimit
from hofib.algebra import cyclic, dihedral, indiscrete_groupoid, symmetric
from hofib.bicategory import is_two_groupoid, validate_bicategory
from hofib.simplicial import TruncatedSimplicialSet, kan_check, validate_simplicial
from hofib.xmod import (
    CrossedModule,
    beta,
    beta_inverse,
    compare_nerves,
    compare_with_ordinary_nerve,
    conjugation_xmod,
    constant_fiber_xmod,
    dakin_constraints_report,
    dakin_simplices,
    endo_groupoid,
    image,
    kernel,
    loop_report,
    normal_inclusion_xmod,
    pasting_oracle,
    pi,
    roundtrip_two_groupoid,
    roundtrip_xmod,
    trivial_fiber_xmod,
    validate_xmod,
    xmod_nerve,
    xmod_of_groups,
)


@st.composite
def central_xmods(draw):
    """(Z_m, Z_n, x |-> k x) with trivial action."""
    m = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=4))
    k = draw(st.sampled_from([k for k in range(n) if (k * m) % n == 0]))
    X = xmod_of_groups(cyclic(m), cyclic(n), {g: (k * g) % n for g in range(m)}, name=f"(Z{m},Z{n},{k})")
    return X, m, n, k


@settings(max_examples=25, deadline=None)
@given(central_xmods())
def test_central_xmods_and_their_homotopy(data):
    X, m, n, _ = data
    assert validate_xmod(X).ok
    a = X.P.objects[0]
    ker = len(kernel(X, a))
    assert len(image(X, a)) * ker == m
    assert pi(X).orders(a) == (1, n * ker // m, ker)
    assert loop_report(X, a).ok


@settings(max_examples=15, deadline=None)
@given(central_xmods())
def test_beta_roundtrips(data):
    X = data[0]
    K = beta(X)
    assert validate_bicategory(K).ok and is_two_groupoid(K)
    assert roundtrip_xmod(X)[0].ok
    assert roundtrip_two_groupoid(K)[0].ok


@settings(max_examples=10, deadline=None)
@given(central_xmods())
def test_nerve_comparison_through_dimension_three(data):
    X = data[0]
    rep, _ = compare_nerves(X, 3)
    assert rep.ok


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), cyclic(3)], ids=["S3", "D4", "Z3"])
def test_conjugation_xmod(G):
    X = conjugation_xmod(G)
    assert validate_xmod(X).ok
    prof = pi(X)
    a = X.P.objects[0]
    assert prof.pi1[a].order() == 1
    assert prof.pi2[a].order() == 1
    assert roundtrip_xmod(X)[0].ok


def test_normal_inclusion_has_trivial_pi2():
    G = symmetric(3)
    A = [g for g in G.elements if G.m(g, g, g) == G.e]
    X = normal_inclusion_xmod(G, A)
    assert validate_xmod(X).ok
    assert pi(X).orders(X.P.objects[0]) == (1, 2, 1)


def test_broken_peiffer_identity_is_reported():
    """(S3, S3, id) with the trivial action violates Peiffer and equivariance."""
    G = symmetric(3)
    X = xmod_of_groups(G, G, {g: g for g in G.elements})
    rep = validate_xmod(X)
    assert not rep.ok
    assert any("peiffer" in ax for ax in rep.axioms())


def test_non_homomorphic_boundary_is_reported():
    X = xmod_of_groups(cyclic(2), cyclic(2), {0: 1, 1: 0})
    assert not validate_xmod(X).ok


def test_groupoid_xmods():
    P = indiscrete_groupoid([0, 1])
    for X in (trivial_fiber_xmod(P), constant_fiber_xmod(P, cyclic(2))):
        assert validate_xmod(X).ok
        assert roundtrip_xmod(X)[0].ok
        assert len(pi(X).pi0) == 1


def test_beta_inverse_rejects_non_groupoids(corpus):
    with pytest.raises(ValueError):
        beta_inverse(by_name(corpus.bicategories, "SN<=2"))


def test_pasting_oracle_on_s3():
    assert pasting_oracle(conjugation_xmod(symmetric(3))).ok


def test_two_simplex_count_with_zero_boundary(corpus):
    """Over one object with d = 0 and P = Z2: 4 composable triangles of
    1-cells, each with 2 fillers."""
    X = by_name(corpus.xmods, "(Z2,Z2,0)")
    cells = dakin_simplices(X, 2)
    assert len(cells[1]) == 2
    assert len(cells[2]) == 8
    assert dakin_constraints_report(X, cells).ok


def test_nerve_is_kan_and_simplicial(corpus):
    X = by_name(corpus.xmods, "(Z2,Z2,id)")
    T = xmod_nerve(X, 3)
    assert validate_simplicial(T).ok
    for n in (1, 2):
        for k in range(n + 1):
            assert kan_check(T, n, k).ok


def test_trivial_fibre_nerve_is_the_groupoid_nerve(corpus):
    X = by_name(corpus.xmods, "(1,indiscrete2,1)")
    assert compare_with_ordinary_nerve(X, 3).ok


def test_corrupted_nerve_face_breaks_the_comparison(corpus):
    X = by_name(corpus.xmods, "(Z2,Z2,id)")
    T = xmod_nerve(X, 3)
    face = {k: dict(v) for k, v in T.face.items()}
    x = sorted(face[(2, 1)], key=repr)[0]
    face[(2, 1)][x] = next(y for y in T.cells[1] if y != face[(2, 1)][x])
    bad = TruncatedSimplicialSet(T.N, T.cells, face, T.degeneracy, name="bad")
    rep, _ = compare_nerves(X, 3, T=bad)
    assert not rep.ok


def test_resource_ceiling_is_explicit(corpus):
    X = by_name(corpus.large_xmods, "(S3,S3,id)")
    with pytest.raises(ResourceLimit):
        dakin_simplices(X, 4, limit=100)


def test_endo_groupoid_shape():
    X = conjugation_xmod(symmetric(3))
    E = endo_groupoid(X, X.P.objects[0])
    assert len(E.objects) == 6
    assert len(E.components()) == 1


def test_all_corpus_xmods_validate(corpus):
    for X in corpus.xmods + corpus.large_xmods:
        assert isinstance(X, CrossedModule)
        assert validate_xmod(X).ok, X.name
