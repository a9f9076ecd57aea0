"""Acceptance criteria 1 to 14.  The full suite report comes from two runs of
`hofib run all --seed 0 --json`; criteria 1 to 13 read the checks of the first
run and criterion 14 compares the two outputs byte for byte."""

import json
import subprocess
import sys

import pytest

from hofib import io
from hofib.bicategory import bicategories_equal
from hofib.comma import comma
from hofib.monoidal import monoidal_fibre, sigma_pair
from hofib.suites import SUITES


@pytest.fixture(scope="module")
def runs():
    cmd = [sys.executable, "-m", "hofib.cli", "run", "all", "--seed", "0", "--json"]
    out = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    return out


@pytest.fixture(scope="module")
def report(runs):
    doc = json.loads(runs[0].stdout)
    io.check_document(doc, "report.v1")
    return doc


def checks(report, prefix):
    return [c for c in report["checks"] if c["id"].startswith(prefix)]


def all_valid(cs):
    bad = [(c["id"], c["status"], c["violations"][:1]) for c in cs if c["status"] != "valid"]
    assert not bad, bad
    return len(cs)


def subjects(cs):
    return {c["subject"] for c in cs}


def test_criterion_1_comma_bicategory_axioms(report, corpus):
    cs = checks(report, "comma/comma/")
    assert all_valid([c for c in cs if c["id"].endswith("/axioms")]) == len(corpus.comma_pairs)


def test_criterion_2_pullback_lemma(report, corpus):
    cs = checks(report, "comma/comma/")
    squares = [c for c in cs if c["id"].endswith("/squares")]
    lemma = [c for c in cs if c["id"].endswith("/lemma")]
    assert all_valid(squares) >= 5 and all_valid(lemma) >= 5


def test_criterion_3_hom_isomorphisms(report, corpus):
    cs = checks(report, "comma/hom-iso/")
    all_valid(cs)
    assert subjects(cs) == {B.name for B in corpus.bicategories}


def test_criterion_4_appendix_adjunction(report, corpus):
    for kind in ("adjunction/", "adjunction-bijection/", "projection-R/"):
        cs = checks(report, "appendix/" + kind)
        all_valid(cs)
        assert subjects(cs) == {B.name for B in corpus.bicategories}


def test_criterion_5_grothendieck_nerve(report, corpus):
    for kind in ("grothendieck/", "grothendieck-faces/"):
        cs = checks(report, "nerve/" + kind)
        all_valid(cs)
        assert subjects(cs) == {B.name for B in corpus.bicategories}


def test_criterion_6_nerve_functoriality(report):
    assert all_valid(checks(report, "nerve/ner-functor/")) >= 3
    assert all_valid(checks(report, "nerve/ner-identity/")) >= 1


def test_criterion_7_geometric_nerves(report, corpus):
    cs = checks(report, "nerve/gnerve/")
    assert all_valid(cs) == 4 * len(corpus.bicategories)
    assert all_valid(checks(report, "nerve/gnerve-discrete/")) == 4 * len(corpus.discrete_categories)


def test_criterion_8_crossed_module_core(report, corpus):
    cs = checks(report, "xmod/xmod/")
    all_valid(cs)
    assert subjects(cs) == {X.name for X in corpus.xmods + corpus.large_xmods}
    assert len(cs) >= 4


def test_criterion_9_nerve_comparison(report, corpus):
    cs = checks(report, "xmod/xmod-nerve/")
    all_valid(cs)
    assert subjects(cs) == {X.name for X in corpus.xmods}
    large = checks(report, "xmod/xmod-nerve-3/")
    all_valid(large)
    assert subjects(large) == {X.name for X in corpus.large_xmods}


def test_criterion_10_fibration_comparison(report, corpus):
    fib = {p["name"] for p in corpus.xmod_pairs if p["fibration_leg"]}
    cs = [c for c in checks(report, "mv/hpb/") if c["subject"] in fib]
    assert all_valid(cs) >= 3


def test_criterion_11_mayer_vietoris(report, corpus):
    cs = checks(report, "mv/mv/")
    all_valid(cs)
    names = subjects(cs)
    assert {"example-i", "example-ii"} <= names
    assert len(names - {"example-i", "example-ii"}) >= 3
    all_valid(checks(report, "mv/example-"))


def test_criterion_12_monoidal_identification(report, corpus):
    assert all_valid(checks(report, "monoidal/monoidal-fibre/")) >= 3
    all_valid(checks(report, "monoidal/regularity/"))
    F, Fp = corpus.monoidal_pairs[0]
    assert bicategories_equal(monoidal_fibre(F, Fp), comma(*sigma_pair(F, Fp))[0])


def test_criterion_13_loop_groupoid(report, corpus):
    cs = checks(report, "xmod/loop/")
    all_valid(cs)
    assert subjects(cs) == {X.name for X in corpus.xmods + corpus.large_xmods}


def test_criterion_14_determinism(runs, report):
    a, b = runs
    assert a.returncode == b.returncode == 0, a.stderr.decode()[-2000:]
    assert a.stdout == b.stdout
    assert report["status"] == "valid"
    assert {c["id"].split("/")[0] for c in report["checks"]} == set(SUITES)
