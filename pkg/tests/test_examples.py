"""The two worked homotopy pullbacks of crossed modules, and the comparison
and exact-sequence checks on further pairs."""

from hypothesis import given, settings
from hypothesis import strategies as st

from hofib.algebra import cyclic
from hofib.xmod import (
    fibration_xmod,
    homotopy_fibre_xmod,
    homotopy_pullback_xmod,
    identity_xmod,
    induced_pi,
    mv_basepoints,
    mv_check,
    pi,
    pullback_xmod,
    validate_xmod,
    validate_xmod_morphism,
    weak_equivalence,
    xmod_of_groups,
)


def test_example_i_groups_over_a_point(corpus):
    M, Mp = corpus.examples["example-i"]
    Z, pr, prp = homotopy_pullback_xmod(M, Mp)
    assert validate_xmod(Z).ok
    assert validate_xmod_morphism(pr).ok and validate_xmod_morphism(prp).ok
    assert len(Z.P.objects) == 2
    for a in Z.P.objects:
        assert pi(Z).orders(a) == (1, 1, 1)
    for a, ap in mv_basepoints(M, Mp):
        assert mv_check(M, Mp, a, ap, Z).ok


def test_example_i_pullback_is_equivalent(corpus):
    """The identity leg is a fibration, so the strict pullback (a point) is
    equivalent to the contractible homotopy pullback."""
    M, Mp = corpus.examples["example-i"]
    assert fibration_xmod(M)
    W, j = pullback_xmod(M, Mp)
    assert len(W.P.objects) == 1
    ok, det = weak_equivalence(j)
    assert ok and det["pi0_bijective"]


def test_example_ii_abelian_group_over_itself(corpus):
    M, Mp = corpus.examples["example-ii"]
    Z, _, _ = homotopy_pullback_xmod(M, Mp)
    W, j = pullback_xmod(M, Mp, Z)
    o = Z.P.objects[0]
    assert len(Z.P.objects) == 1 and len(Z.P.morphisms) == 2
    assert Z.group(o).order() == 4
    assert W.group(W.P.objects[0]).order() == 2
    assert pi(Z).orders(o) == (1, 1, 2)
    assert fibration_xmod(M) and fibration_xmod(Mp)
    assert weak_equivalence(j)[0]


def test_corpus_pairs_with_a_fibration_leg(corpus):
    checked = 0
    for p in corpus.xmod_pairs:
        M, Mp = p["left"], p["right"]
        legs = fibration_xmod(M) or fibration_xmod(Mp)
        assert legs == p["fibration_leg"], p["name"]
        Z, _, _ = homotopy_pullback_xmod(M, Mp)
        _, j = pullback_xmod(M, Mp, Z)
        if legs:
            _, det = weak_equivalence(j)
            assert det["pi0_bijective"] and all(det["pi1_iso"].values()) and all(det["pi2_iso"].values())
            checked += 1
        for a, ap in mv_basepoints(M, Mp):
            assert mv_check(M, Mp, a, ap, Z).ok, p["name"]
    assert checked >= 3


def test_homotopy_fibre_of_a_quotient(corpus):
    q = next(p for p in corpus.xmod_pairs if p["name"] == "mod2-mod2")["left"]
    F = homotopy_fibre_xmod(q, q.target.P.objects[0])
    assert validate_xmod(F).ok


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3), st.data())
def test_identity_pairs_are_fibrations_with_exact_sequences(m, n, data):
    k = data.draw(st.sampled_from([k for k in range(n) if (k * m) % n == 0]))
    X = xmod_of_groups(cyclic(m), cyclic(n), {g: (k * g) % n for g in range(m)})
    one = identity_xmod(X)
    assert fibration_xmod(one)
    Z, _, _ = homotopy_pullback_xmod(one, one)
    assert validate_xmod(Z).ok
    _, j = pullback_xmod(one, one, Z)
    assert weak_equivalence(j)[0]
    for a, ap in mv_basepoints(one, one):
        assert mv_check(one, one, a, ap, Z).ok


def test_induced_maps_are_well_defined(corpus):
    for p in corpus.xmod_pairs:
        assert induced_pi(p["left"])["report"].ok


def test_without_a_fibration_leg_the_comparison_can_fail(corpus):
    """Two inclusions of the point into BZ2: the strict pullback is a point,
    the homotopy pullback has two components."""
    p = next(p for p in corpus.xmod_pairs if p["name"] == "incl-incl")
    assert not p["fibration_leg"]
    _, j = pullback_xmod(p["left"], p["right"])
    ok, det = weak_equivalence(j)
    assert not ok and not det["pi0_bijective"]
