from conftest import by_name
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib.algebra import cyclic, dihedral
from hofib.bicategory import bicategories_equal, validate_bicategory, validate_lax
from hofib.comma import comma
from hofib.monoidal import (
    delooping,
    discrete_monoidal_group,
    group_hom_monoidal,
    identity_monoidal,
    monoidal_fibre,
    regularity_check,
    sigma_pair,
    tensor_translation,
    truncated_monoid,
    unit_functor,
    validate_monoidal,
    validate_monoidal_functor,
)


@st.composite
def cyclic_homs(draw):
    """(m, n, k) with x |-> k x a homomorphism Z_m -> Z_n."""
    m = draw(st.integers(min_value=1, max_value=3))
    n = draw(st.integers(min_value=1, max_value=3))
    k = draw(st.sampled_from([k for k in range(n) if (k * m) % n == 0]))
    return m, n, k


def test_corpus_monoidals_are_valid(corpus):
    for M in corpus.monoidals:
        assert validate_monoidal(M).ok, M.name


def test_corpus_monoidal_pairs_match_the_comma(corpus):
    for F, Fp in corpus.monoidal_pairs:
        assert bicategories_equal(monoidal_fibre(F, Fp), comma(*sigma_pair(F, Fp))[0])


@settings(max_examples=15, deadline=None)
@given(cyclic_homs())
def test_fibre_of_a_group_homomorphism_is_the_comma(mnk):
    m, n, k = mnk
    MG, MH = discrete_monoidal_group(cyclic(m)), discrete_monoidal_group(cyclic(n))
    F = group_hom_monoidal(MG, MH, {x: (k * x) % n for x in range(m)}, name=f"x{k}")
    assert validate_monoidal_functor(F).ok
    One = identity_monoidal(MH)
    X = monoidal_fibre(F, One)
    assert validate_bicategory(X).ok
    assert bicategories_equal(X, comma(*sigma_pair(F, One))[0])
    # objects of the fibre are the elements of the target
    assert len(X.objects) == n


@given(st.integers(min_value=1, max_value=6))
def test_group_deloopings_are_regular_categorical_groups(n):
    r = regularity_check(discrete_monoidal_group(cyclic(n)))
    assert r["regular"] and r["categorical_group"]


def test_nonabelian_group_is_regular():
    r = regularity_check(discrete_monoidal_group(dihedral(3)))
    assert r["regular"] and r["categorical_group"]


@given(st.integers(min_value=1, max_value=3))
def test_truncated_monoid_is_not_a_categorical_group(n):
    M = truncated_monoid(n)
    assert validate_monoidal(M).ok
    assert not regularity_check(M)["categorical_group"]


def test_sigma_pair_directions(corpus):
    F, Fp = corpus.monoidal_pairs[0]
    SF, SFp = sigma_pair(F, Fp)
    assert SF.direction == "lax" and SFp.direction == "oplax"
    assert len(SF.source.objects) == 1


def test_tensor_translations_are_strict(corpus):
    M = by_name(corpus.monoidals, "Z2[w]")
    I = unit_functor(M)
    for m in M.C.objects:
        for side in ("left", "right"):
            T = tensor_translation(m, side, I)
            assert validate_lax(T).ok
            assert T.is_strict()


def test_delooping_has_one_object(corpus):
    for M in corpus.monoidals:
        B = delooping(M)
        assert len(B.objects) == 1
        assert len(B.cells1) == len(M.C.objects)
