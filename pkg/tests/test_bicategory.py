import pytest
from conftest import by_name
from hypothesis import given
from hypothesis import strategies as st

from hofib.algebra import cyclic, indiscrete_groupoid, ordinal
from hofib.bicategory import (
    LAX,
    OPLAX,
    FiniteBicategory,
    as_direction,
    compose_lax,
    discrete_bicategory,
    identity_lax,
    is_strict,
    is_two_groupoid,
    lax_equal,
    terminal_bicategory,
    validate_bicategory,
    validate_lax,
)
from hofib.monoidal import delooping, discrete_monoidal_group
from hofib.suites import corrupt_pentagon


def test_corpus_bicategories_are_valid(corpus):
    for B in corpus.bicategories:
        assert validate_bicategory(B).ok, B.name


@given(st.integers(min_value=1, max_value=5))
def test_delooped_groups_are_strict_two_groupoids(n):
    B = delooping(discrete_monoidal_group(cyclic(n)))
    assert validate_bicategory(B).ok
    assert is_strict(B) and is_two_groupoid(B)
    assert len(B.objects) == 1 and len(B.cells1) == n


@given(st.integers(min_value=0, max_value=3))
def test_discrete_bicategories_of_ordinals(p):
    B = discrete_bicategory(ordinal(p))
    assert validate_bicategory(B).ok
    assert len(B.cells2) == len(B.cells1)


def test_twisted_associator_is_not_strict(corpus):
    B = by_name(corpus.bicategories, "SZ2[w]")
    assert not is_strict(B)
    assert not is_two_groupoid(B)
    assert all(B.is_iso(c) for c in B.cells2)


def test_terminal_bicategory():
    T = terminal_bicategory()
    assert validate_bicategory(T).ok
    assert len(T.objects) == len(T.cells1) == len(T.cells2) == 1


def test_corrupted_associator_breaks_pentagon(corpus):
    B = corrupt_pentagon(by_name(corpus.bicategories, "SZ2[w]"))
    rep = validate_bicategory(B)
    assert not rep.ok
    assert "pentagon" in rep.axioms()


def test_corrupted_horizontal_composition_is_reported(corpus):
    B = by_name(corpus.bicategories, "SZ2").materialize()
    hcomp2 = dict(B.hcomp2)
    k = sorted(hcomp2, key=repr)[0]
    others = [c for c in B.cells2 if c != hcomp2[k]]
    hcomp2[k] = others[0]
    bad = FiniteBicategory(B.objects, B.cells1, B.cells2, dict(B.vcomp), dict(B.hcomp1), hcomp2,
                           dict(B.id1), dict(B.id2), dict(B.assoc), dict(B.lunit), dict(B.runit), name="bad")
    assert not validate_bicategory(bad).ok


@pytest.mark.parametrize("direction", [LAX, OPLAX])
def test_identity_is_a_unit_for_composition(corpus, direction):
    for B in corpus.nerve_bicategories:
        one = identity_lax(B, direction)
        assert validate_lax(one).ok
        assert lax_equal(compose_lax(one, one), one)


def test_lax_pairs_compose(corpus):
    for F, Fp in corpus.lax_pairs:
        G = compose_lax(Fp, F)
        assert validate_lax(G).ok, G.name


def test_pseudo_functor_reads_both_ways(corpus):
    for F, _ in corpus.comma_pairs:
        if F.is_pseudo():
            assert validate_lax(as_direction(F, OPLAX)).ok


def test_indiscrete_discrete_bicategory_is_a_two_groupoid():
    assert is_two_groupoid(discrete_bicategory(indiscrete_groupoid([0, 1, 2])))
