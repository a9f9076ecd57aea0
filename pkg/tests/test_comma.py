import pytest
from conftest import by_name
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib.algebra import GroupoidFunctor, cyclic, indiscrete_groupoid, ordinal
from hofib.bicategory import (
    LAX,
    OPLAX,
    discrete_bicategory,
    identity_lax,
    lax_equal,
    validate_bicategory,
    validate_lax,
    validate_transformation,
)
from hofib.comma import (
    bar_lift,
    comma,
    comma2,
    comma2_symmetry,
    compare_translations,
    compare_with_classical,
    fibre,
    hom_iso,
    inclusion_J,
    inclusion_Jp,
    mediating,
    mediating_uniqueness,
    omega,
    omega_prime,
    property_B_witness,
    pullback_lemma_check,
    pullback_square_check,
    translate,
)
from hofib.monoidal import delooping, discrete_monoidal_group


def group_bicategory(n):
    return delooping(discrete_monoidal_group(cyclic(n)))


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=3))
def test_comma_of_identities_on_a_group(n):
    B = group_bicategory(n)
    C, (P, Pp) = comma(identity_lax(B, LAX), identity_lax(B, OPLAX))
    assert validate_bicategory(C).ok
    assert validate_lax(P).ok and validate_lax(Pp).ok
    # objects (*, g, *): one per group element
    assert len(C.objects) == n


def test_comma_requires_lax_then_oplax(corpus):
    B = corpus.bicategories[0]
    with pytest.raises(ValueError):
        comma(identity_lax(B, OPLAX), identity_lax(B, OPLAX))


def test_corpus_commas_and_squares(corpus):
    for F, Fp in corpus.comma_pairs[:4]:
        C, _ = comma(F, Fp)
        assert validate_bicategory(C).ok, C.name
        assert pullback_square_check(F, Fp, C).ok


def test_pullback_lemma_on_inclusions(corpus):
    for F, Fp in corpus.comma_pairs[3:6]:
        C, _ = comma(F, Fp)
        assert pullback_lemma_check(F, Fp, C=C).ok
        for a in F.source.objects:
            J = inclusion_J(a, F, Fp, C)
            assert validate_lax(J).ok
            assert pullback_lemma_check(F, Fp, K=J, C=C).ok
        for ap in Fp.source.objects:
            assert validate_lax(inclusion_Jp(ap, F, Fp, C)).ok


def test_uniqueness_detects_a_collapsed_comma(corpus):
    """With P in place of Fbar the objects (*, g, *) share their images, so the
    cone no longer determines the mediating functor."""
    from hofib.bicategory import compose_lax
    F, Fp = corpus.comma_pairs[0]
    C, _ = comma(F, Fp)
    Fbar, _, BF, _ = bar_lift(F, Fp, C)
    K = identity_lax(C, LAX)
    L, M = compose_lax(C.P, K), compose_lax(Fbar, K)
    N = mediating(L, M, C, BF)
    assert mediating_uniqueness(N, L, M, C, Fbar).ok
    rep = mediating_uniqueness(N, L, L, C, C.P)
    assert "unique-0-cell" in rep.axioms()


def test_hom_iso_for_every_object_pair(corpus):
    for B in corpus.nerve_bicategories:
        for b in B.objects:
            for bp in B.objects:
                rep, X = hom_iso(B, b, bp)
                assert rep.ok, (B.name, b, bp)
                assert len(X.objects) == len(B.hom1(b, bp))


def test_fibre_of_the_identity_over_a_point(corpus):
    B = by_name(corpus.bicategories, "SZ2[w]")
    X = fibre(identity_lax(B, LAX), B.objects[0])
    assert validate_bicategory(X).ok
    assert len(X.objects) == 2


def test_translations_and_their_composite(corpus):
    B = by_name(corpus.bicategories, "SZ2[w]")
    F = identity_lax(B, LAX)
    for p in B.cells1:
        T = translate(p, F)
        assert validate_lax(T).ok and T.is_strict()
    p, q = sorted(B.cells1, key=repr)[-1], sorted(B.cells1, key=repr)[-1]
    out = compare_translations(p, q, F)
    assert out["report"].ok
    assert out["kind"] in ("equal", "transformation")


def test_translation_needs_exactly_one_functor(corpus):
    B = corpus.bicategories[0]
    with pytest.raises(ValueError):
        translate(B.cells1 and next(iter(B.cells1)))


def test_double_comma_symmetry(corpus):
    B = by_name(corpus.bicategories, "SZ2")
    F = identity_lax(B)
    X, Y = comma2(F, F), comma2(F, F)
    assert validate_bicategory(X).ok
    assert comma2_symmetry(X, Y).ok


def test_omega_transformations(corpus):
    B = by_name(corpus.bicategories, "SZ2[w]")
    assert validate_transformation(omega(identity_lax(B, OPLAX))).ok
    assert validate_transformation(omega_prime(identity_lax(B, LAX))).ok


def test_property_b_for_pseudo_functors(corpus):
    F, _ = corpus.comma_pairs[4]
    assert property_B_witness(F)["holds_sufficient"]


def test_discrete_inputs_give_the_classical_comma():
    C, E = ordinal(1), indiscrete_groupoid([0, 1])
    Phi = GroupoidFunctor(C, E, {0: 0, 1: 1}, {m: (C.src(m), C.dst(m)) for m in C.morphisms}, name="i")
    Psi = GroupoidFunctor(E, E, {x: x for x in E.objects}, {m: m for m in E.morphisms}, name="1")
    SC, SE = discrete_bicategory(C), discrete_bicategory(E)
    assert compare_with_classical(Phi, Psi, SC, SE, SE).ok


def test_identity_cone_mediates_to_itself(corpus):
    F, Fp = corpus.comma_pairs[1]
    C, _ = comma(F, Fp)
    Fbar, _, BF, _ = bar_lift(F, Fp, C)
    K = identity_lax(C, LAX)
    from hofib.bicategory import compose_lax
    N = mediating(compose_lax(C.P, K), compose_lax(Fbar, K), C, BF)
    assert lax_equal(N, K)
