import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hofib.corpus import BoundsExceeded, CorpusSpec, generate_corpus


def test_seed_zero_is_deterministic():
    assert generate_corpus(0).names() == generate_corpus(0).names()


def test_different_seeds_differ():
    assert generate_corpus(0).names() != generate_corpus(1).names()


@settings(max_examples=5, deadline=None)
@given(st.integers(min_value=0, max_value=50))
def test_any_seed_is_deterministic(seed):
    assert generate_corpus(seed).names() == generate_corpus(seed).names()


def test_seed_zero_contents(corpus):
    names = corpus.names()
    assert {"example-i", "example-ii"} <= set(names["examples"])
    assert "(S3,S3,id)" in names["large_xmods"]
    assert "indiscrete2" in names["categories"]
    assert len(corpus.comma_pairs) >= 5
    assert len(corpus.monoidal_pairs) >= 3
    assert sum(p["fibration_leg"] for p in corpus.xmod_pairs) >= 3


def test_bounds_are_enforced():
    with pytest.raises(BoundsExceeded):
        generate_corpus(CorpusSpec(seed=0, max_objects=1))
